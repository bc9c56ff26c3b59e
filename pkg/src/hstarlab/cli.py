"""Command line front end.

Exit codes: 0 success, 1 usage or parse error, 2 verification finding
(including a disagreement between the two h* routes), 3 budget exhausted.

Family specs accepted by ``build``::

    a3:K  a4-3k:K  a4-4k:K  a6:K  a8:K     trinomial families, K >= 2
    b:K:A:L   c:K:A:L                       K = 2^(L-3) A, resp. 3^(L-2) A
    white:K:M:A1,...,AK                     cyclic Cayley group of K segments
    binomial:P:R:K                          simplex-code family over F_P
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .classify import (
    CLAUSES,
    DEFAULT_BUDGET,
    EnumerationBounds,
    conjecture_census,
    explain,
    trinomial_corollary_discrepancy,
    verify_classification,
)
from .constructions import binomial_family, parse_family, trinomial_family, white_cayley_group
from .core_lattice import format_hstar, hstar_by_counting, normalized_volume, random_simplex
from .errors import BudgetExceededError, HStarError, InvalidSpecError, OracleMismatchError
from .simplex_group import group_of_simplex, hstar_from_group, is_lattice_pyramid, simplex_of_group

EXIT_OK, EXIT_USAGE, EXIT_FINDING, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 0


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for findings here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    out: Path | None = None
    seed: int = DEFAULT_SEED
    budget: int = DEFAULT_BUDGET
    args: dict = field(default_factory=dict)

    @classmethod
    def from_namespace(cls, ns):
        extra = {k: v for k, v in vars(ns).items()
                 if k not in ("command", "format", "out", "seed", "budget")}
        out = Path(ns.out) if ns.out else None
        if out is not None and out.parent and not out.parent.exists():
            raise InvalidSpecError(f"directory {out.parent} does not exist")
        return cls(ns.command, ns.format, out, ns.seed, ns.budget, extra)


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidSpecError(f"cannot read {path}: {exc.strerror}") from None


def _emit(cfg, text):
    if cfg.out is not None:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# hstar


def cmd_hstar(cfg):
    a = cfg.args
    if a["random"] is not None:
        S = random_simplex(a["random"], random.Random(cfg.seed))
        G = None
    else:
        text = _read_input(a["input"])
        if a["group"] or ('"den"' in text and formats.looks_like_json(text)):
            G, S = formats.read_group(text), None
        else:
            S, G = formats.read_simplex(text), None

    routes = {}
    if S is not None:
        G = group_of_simplex(S)
        routes["counting"] = hstar_by_counting(S)
    routes["group"] = hstar_from_group(G)
    if len(set(routes.values())) > 1:
        dump = {"vertices": [list(v) for v in S.vertices],
                **{k: list(v) for k, v in routes.items()}}
        raise OracleMismatchError("h* routes disagree: " + json.dumps(dump))

    h = routes["group"]
    vol = G.order
    if S is not None and normalized_volume(S) != vol:
        raise OracleMismatchError(f"group order {vol} != volume {normalized_volume(S)}")
    pyramid = bool(is_lattice_pyramid(G))
    if cfg.fmt == "json":
        payload = {"hstar": list(h), "vol": vol, "degree": len(h) - 1,
                   "pyramid": pyramid, "routes": sorted(routes)}
        if S is not None:
            payload["vertices"] = [list(v) for v in S.vertices]
        _emit(cfg, json.dumps(payload) + "\n")
    else:
        state = "pyramid" if pyramid else "not pyramid"
        _emit(cfg, f"h* = {format_hstar(h)}, vol {vol}, degree {len(h) - 1}, {state}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# build


def _ints(text, sep=","):
    try:
        return [int(x) for x in text.split(sep)]
    except ValueError:
        raise InvalidSpecError(f"expected integers in {text!r}") from None


def build_from_spec(text):
    """``(group, info)`` for a family spec string; see the module docstring."""
    parts = text.strip().split(":")
    head = parts[0].lower()
    if head == "white":
        if len(parts) != 4:
            raise InvalidSpecError("white spec is white:K:M:A1,...,AK")
        k, m = _ints(parts[1])[0], _ints(parts[2])[0]
        G = white_cayley_group(k, m, _ints(parts[3]))
        return G, {"k": k, "m": m, "d": 2 * k - 1}
    if head == "binomial":
        if len(parts) != 4:
            raise InvalidSpecError("binomial spec is binomial:P:R:K")
        p, r, k = (_ints(x)[0] for x in parts[1:])
        G = binomial_family(p, r, k)
        return G, {"k": k, "m": G.order, "d": G.n - 1}
    spec = parse_family(text)
    return trinomial_family(spec), {"k": spec.k, "m": spec.m, "d": spec.d, "case": str(spec)}


def cmd_build(cfg):
    G, info = build_from_spec(cfg.args["spec"])
    h = hstar_from_group(G)
    info["hstar"] = list(h)
    canonical = cfg.args["canonical"]
    group_text = formats.write_group(G, cfg.fmt, canonical=canonical)
    line = f"k={info['k']} m={info['m']} d={info['d']} h* = {format_hstar(h)}"
    if cfg.out is None:
        sys.stdout.write(group_text)
        print(line, file=sys.stderr)
        return EXIT_OK
    cfg.out.mkdir(parents=True, exist_ok=True)
    ext = "json" if cfg.fmt == "json" else "txt"
    (cfg.out / f"group.{ext}").write_text(group_text)
    if G.n >= 2:
        S = simplex_of_group(formats.read_group(group_text))
        (cfg.out / f"simplex.{ext}").write_text(formats.write_simplex(S, cfg.fmt))
    print(line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def bounds_from_args(a):
    n = a["d"] + 1
    orders = frozenset(_ints(a["orders"])) if a["orders"] else None
    p = a["elementary"]
    if p:
        max_rank = a["max_rank"] or 4
        max_order = a["max_order"] or p**max_rank
    else:
        max_rank = a["max_rank"]
        max_order = a["max_order"] or 12
    try:
        return EnumerationBounds(n, max_order, max_rank, orders, p)
    except ValueError as exc:
        raise InvalidSpecError(str(exc)) from None


def cmd_verify(cfg):
    a = cfg.args
    bounds = bounds_from_args(a)
    try:
        report = verify_classification(a["k"], a["d"], bounds, budget=cfg.budget)
    except ValueError as exc:
        raise InvalidSpecError(str(exc)) from None
    if cfg.fmt == "json":
        text = report.json_lines()
        text = text + "\n" if text else ""
    else:
        text = report.summary() + "\n"
    _emit(cfg, text)
    if cfg.out is not None:
        print(f"m-set {sorted(report.m_set)}; wrote {cfg.out}")
    return EXIT_OK if report.ok else EXIT_FINDING


# ---------------------------------------------------------------------------
# feasible


def cmd_feasible(cfg):
    kind, params = cfg.args["kind"], cfg.args["params"]
    arity = {"scott": 2, "degree2": 2, "gorenstein2": 2, "binomial": 3, "trinomial": 3,
             "trinomial-corollary": 3}
    if kind in arity and len(params) != arity[kind]:
        raise InvalidSpecError(f"{kind} takes {arity[kind]} integers, got {len(params)}")
    ok, clause = explain(kind, *params)
    note = trinomial_corollary_discrepancy(*params) if kind == "trinomial" else None
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"kind": kind, "params": params, "feasible": ok,
                               "clause": clause, "note": note}) + "\n")
    else:
        text = f'yes ("{clause}")' if ok else "no"
        if note:
            text += f"\nnote: {note}"
        _emit(cfg, text + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# conjecture


def cmd_conjecture(cfg):
    a = cfg.args
    rep = conjecture_census(a["max_n"], a["max_order"], a["max_rank"], budget=cfg.budget)
    bad_eq = [G for k, G in rep.equality_cases if k != 1]
    if cfg.fmt == "json":
        payload = {
            "max_n": rep.max_n, "max_order": rep.max_order, "checked": rep.checked,
            "hits": len(rep.hits),
            "counterexample": formats.group_to_json(rep.counterexample).strip()
            if rep.counterexample else None,
            "equality_cases": len(rep.equality_cases),
            "equality_k_is_1": rep.equality_ok,
        }
        _emit(cfg, json.dumps(payload) + "\n")
    else:
        lines = [
            f"groups checked {rep.checked} (n <= {rep.max_n}, order <= {rep.max_order})",
            f"trinomials with b >= 2: {len(rep.hits)}",
            "counterexample: " + (formats.group_to_text(rep.counterexample).strip()
                                  if rep.counterexample else "none"),
            f"vol = 9/2 deg reached by {len(rep.equality_cases)} groups, "
            f"all with k = 1: {rep.equality_ok}",
        ]
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_FINDING if rep.counterexample or bad_eq else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="output file (build: output directory)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="candidate budget for enumerations")

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--max-order", type=int)
    bounds.add_argument("--max-rank", type=int)
    bounds.add_argument("--elementary", type=int, metavar="P")
    bounds.add_argument("--orders", help="allowed element orders, e.g. 2,3,4,6,9")

    parser = _Parser(prog="hstarlab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hstar", parents=[common], help="h* of a simplex or group file")
    p.add_argument("input", nargs="?", default="-", help="file path or - for stdin")
    p.add_argument("--group", action="store_true", help="input is a group file")
    p.add_argument("--random", type=int, metavar="D",
                   help="use a random D-simplex drawn with --seed instead of a file")
    p.set_defaults(func=cmd_hstar)

    p = sub.add_parser("build", parents=[common], help="group and simplex of a family",
                       description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("spec")
    p.add_argument("--canonical", action="store_true",
                   help="permute coordinates into canonical order before writing")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common, bounds],
                       help="exhaustive check of the trinomial classification")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("feasible", parents=[common], help="realizability of an h*-shape")
    p.add_argument("kind", choices=sorted(CLAUSES))
    p.add_argument("params", type=int, nargs="+")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("conjecture", parents=[common],
                       help="search small groups for a trinomial counterexample")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--max-rank", type=int)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_namespace(ns)
        return ns.func(cfg)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}; progress {exc.progress}", file=sys.stderr)
        return EXIT_BUDGET
    except OracleMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except HStarError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
