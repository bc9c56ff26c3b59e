"""Text and JSON readers/writers for simplices and groups.

Simplex text: one vertex per line, space separated integers.
Simplex JSON: ``{"dim": d, "vertices": [[...], ...]}``.
Group text: a header line ``n q`` followed by one generator per line, as
integers scaled by ``q``.  Group JSON: ``{"len": n, "den": q, "generators": ...}``.

Writers followed by readers reproduce the object, and readers followed by
writers reproduce writer output byte for byte.
"""

import json

from .core_lattice import LatticeSimplex
from .errors import HStarError, ParseError
from .simplex_group import SimplexGroup, canonical_form


def _lines(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line):
    try:
        return [int(x) for x in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}") from None


def _json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def looks_like_json(text):
    return text.lstrip().startswith("{")


# simplices


def simplex_to_text(S):
    return "".join(" ".join(str(x) for x in v) + "\n" for v in S.vertices)


def simplex_to_json(S):
    return json.dumps({"dim": S.dim, "vertices": [list(v) for v in S.vertices]}) + "\n"


def simplex_from_text(text):
    rows = [_ints(line) for line in _lines(text)]
    if not rows:
        raise ParseError("no vertices")
    return _simplex(rows)


def simplex_from_json(text):
    data = _json(text)
    try:
        verts = data["vertices"]
        dim = data.get("dim")
    except (TypeError, KeyError):
        raise ParseError('expected an object with "vertices"') from None
    S = _simplex(verts)
    if dim is not None and dim != S.dim:
        raise ParseError(f"dim {dim} does not match {len(verts)} vertices")
    return S


def _simplex(rows):
    try:
        if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
            raise ParseError("vertex coordinates must be integers")
        return LatticeSimplex(rows)
    except HStarError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad vertex list: {exc}") from None


def read_simplex(text):
    return simplex_from_json(text) if looks_like_json(text) else simplex_from_text(text)


# groups


def _maybe_canonical(G, canonical):
    if not canonical:
        return G
    C = canonical_form(G)
    # regenerate so the generator list is the reduced one in canonical order
    return SimplexGroup.from_generators(C.generators, den=C.den, n=C.n)


def group_to_text(G, canonical=False):
    G = _maybe_canonical(G, canonical)
    lines = [f"{G.n} {G.den}"] + [" ".join(str(x) for x in g) for g in G.generators]
    return "\n".join(lines) + "\n"


def group_to_json(G, canonical=False):
    G = _maybe_canonical(G, canonical)
    return json.dumps({"len": G.n, "den": G.den,
                       "generators": [list(g) for g in G.generators]}) + "\n"


def group_from_text(text):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty group file")
    head = _ints(lines[0])
    if len(head) != 2:
        raise ParseError(f"header must be 'n q', got {lines[0]!r}")
    return _group(head[0], head[1], [_ints(line) for line in lines[1:]])


def group_from_json(text):
    data = _json(text)
    try:
        return _group(data["len"], data["den"], data.get("generators", []))
    except (TypeError, KeyError):
        raise ParseError('expected an object with "len" and "den"') from None


def _group(n, q, rows):
    if not isinstance(n, int) or not isinstance(q, int) or n < 1 or q < 1:
        raise ParseError(f"bad header n={n!r} q={q!r}")
    for r in rows:
        if len(r) != n:
            raise ParseError(f"generator {r} does not have {n} entries")
        if any(not isinstance(x, int) for x in r):
            raise ParseError(f"generator {r} is not integral")
    return SimplexGroup.from_generators(rows, den=q, n=n)


def read_group(text):
    return group_from_json(text) if looks_like_json(text) else group_from_text(text)


def write_simplex(S, fmt="text"):
    return simplex_to_json(S) if fmt == "json" else simplex_to_text(S)


def write_group(G, fmt="text", canonical=False):
    return group_to_json(G, canonical) if fmt == "json" else group_to_text(G, canonical)
