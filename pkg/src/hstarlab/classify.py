"""Realizability predicates, exhaustive subgroup enumeration and the
classification / conjecture checks built on top of them.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .constructions import CASES, FamilySpec, is_prime, trinomial_family
from .core_lattice import format_hstar, trim
from .errors import BudgetExceededError, UnknownKindError
from .simplex_group import (
    DEFAULT_CAP,
    SimplexGroup,
    canonical_form,
    element_orders,
    hstar_from_group,
    is_lattice_pyramid,
)

DEFAULT_BUDGET = 10**7


def is_palindromic(h):
    h = trim(h)
    return all(h[i] == h[len(h) - 1 - i] for i in range(len(h)))


# ---------------------------------------------------------------------------
# feasibility predicates, written as clause tables so each answer can cite
# the rule that produced it


def _power_of(x, p):
    """Exponent e with ``x == p**e`` (e >= 0), else None."""
    if x < 1:
        return None
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e if x == 1 else None


def _binomial_code_clause(k, d, a):
    if not 2 * k <= d <= 4 * k - 2:
        return False
    D = d + 1
    for p in range(2, 2 * k + 1):
        if not is_prime(p):
            continue
        den = D - p * (D - 2 * k)
        if den <= 0 or (2 * k) % den:
            continue
        e = _power_of(2 * k // den, p)
        if e is not None and e >= 1 and a == 2 * k * p // den - 1:
            return True
    return False


SCOTT_CLAUSES = [
    ("b=0", lambda a, b: b == 0),
    ("b=1 and a=7", lambda a, b: b == 1 and a == 7),
    ("b>=1 and b<=a<=3b+3", lambda a, b: b >= 1 and b <= a <= 3 * b + 3),
]

DEGREE2_CLAUSES = [
    ("b=0", lambda a, b: b == 0),
    ("b=1 and a=7", lambda a, b: b == 1 and a == 7),
    ("b>=1 and a<=3b+3", lambda a, b: b >= 1 and a <= 3 * b + 3),
]

BINOMIAL_CLAUSES = [
    ("d=2k-1 (Cayley polytope of k empty segments)",
     lambda k, d, a: k >= 2 and a >= 1 and d == 2 * k - 1),
    ("2k<=d<=4k-2, a=2kp/(d+1-p(d+1-2k))-1 with 2k/(d+1-p(d+1-2k)) a power of p",
     lambda k, d, a: k >= 2 and a >= 1 and _binomial_code_clause(k, d, a)),
]

GORENSTEIN2_CLAUSES = [
    ("d=2 and 3<=m<=9", lambda m, d: d == 2 and 3 <= m <= 9),
    ("d=3 and 2<=m<=8", lambda m, d: d == 3 and 2 <= m <= 8),
    ("d=4 and 3<=m<=6", lambda m, d: d == 4 and 3 <= m <= 6),
    ("d=5 and m=4", lambda m, d: d == 5 and m == 4),
]


def _bullet4(k, m, d):
    ell = _power_of(m, 2)
    return (ell is not None and ell >= 4 and k % 2 ** (ell - 3) == 0
            and d >= 4 * k - 1)


def _bullet5(k, m, d):
    ell = _power_of(m, 3)
    return (ell is not None and ell >= 3 and k % 3 ** (ell - 2) == 0
            and d >= 3 * k - 1)


# the short-form trinomial list, kept as a separate kind for comparison
TRINOMIAL_COROLLARY_CLAUSES = [
    ("k=1, 3<=m<=9 and d=2", lambda k, m, d: k == 1 and 3 <= m <= 9 and d == 2),
    ("k=1, 2<=m<=9 and d>=3", lambda k, m, d: k == 1 and 2 <= m <= 9 and d >= 3),
    ("k>=2, m in {3,4,6,8} and d>=3k-1",
     lambda k, m, d: k >= 2 and m in (3, 4, 6, 8) and d >= 3 * k - 1),
    ("k=2^(l-3)a, m=2^l, d>=4k-1, a>=1, l>=4", _bullet4),
    ("k=3^(l-2)a, m=3^l, d>=3k-1, a>=1, l>=3", _bullet5),
]


def family_candidates(k, m, d=None):
    """Trinomial families with the given ``k`` and ``m`` (and ``d``)."""
    out = []
    for case in CASES[:5]:
        try:
            spec = FamilySpec(case, k)
        except Exception:
            continue
        if spec.m == m:
            out.append(spec)
    for case, p, shift in (("B", 2, 3), ("C", 3, 2)):
        ell = _power_of(m, p)
        if ell is None or ell < shift or k % p ** (ell - shift):
            continue
        try:
            out.append(FamilySpec(case, k, k // p ** (ell - shift), ell))
        except Exception:
            continue
    if d is not None:
        out = [s for s in out if s.d == d]
    return out


def _from_families(k, m, d):
    return k >= 2 and any(d >= s.d for s in family_candidates(k, m))


# the same question answered from the family classification itself; this is
# the list the predicate uses
TRINOMIAL_CLAUSES = TRINOMIAL_COROLLARY_CLAUSES[:2] + [
    ("k>=2 and d at least the dimension of a classified family (a), (b) or (c)",
     _from_families),
    ("k>=2, m=2: 1+t^(2k) is a binomial, realizable iff d>=4k-1",
     lambda k, m, d: k >= 2 and m == 2 and d >= 4 * k - 1),
]

CLAUSES = {
    "scott": SCOTT_CLAUSES,
    "degree2": DEGREE2_CLAUSES,
    "binomial": BINOMIAL_CLAUSES,
    "gorenstein2": GORENSTEIN2_CLAUSES,
    "trinomial": TRINOMIAL_CLAUSES,
    "trinomial-corollary": TRINOMIAL_COROLLARY_CLAUSES,
}


def explain(kind, *params):
    """``(answer, clause)`` for one of the predicate families in ``CLAUSES``."""
    try:
        table = CLAUSES[kind]
    except KeyError:
        raise UnknownKindError(f"unknown kind {kind!r}; choose from {sorted(CLAUSES)}") from None
    for label, test in table:
        if test(*params):
            return True, label
    return False, None


def scott_feasible(a, b):
    """Is ``1 + a t + b t^2`` the h*-polynomial of a lattice polygon?"""
    return explain("scott", a, b)[0]


def degree2_feasible(a, b):
    """Is ``1 + a t + b t^2`` the h*-polynomial of a lattice polytope of any dimension?"""
    return explain("degree2", a, b)[0]


def binomial_feasible(k, d, a):
    """Is ``1 + a t^k`` the h*-polynomial of a d-dimensional non-pyramid?"""
    return explain("binomial", k, d, a)[0]


def gorenstein_deg2_feasible(m, d):
    """Non-pyramid d-polytopes with h* = 1 + (m-2) t + t^2."""
    return explain("gorenstein2", m, d)[0]


def trinomial_palindromic_feasible(k, m, d):
    """Is ``1 + (m-2) t^k + t^(2k)`` the h*-polynomial of a d-polytope?"""
    if d < 2 or m < 2 or k < 1:
        return False
    return explain("trinomial", k, m, d)[0]


def trinomial_corollary_discrepancy(k, m, d):
    """Describe where the short-form list disagrees with the derived list.

    Returns None when both agree.
    """
    if d < 2 or m < 2 or k < 1:
        return None
    derived, why = explain("trinomial", k, m, d)
    short, _ = explain("trinomial-corollary", k, m, d)
    if derived == short:
        return None
    if derived:
        return f"realizable ({why}) but missing from the short-form list"
    return "in the short-form list but not realizable"


# ---------------------------------------------------------------------------
# trinomial recognition


def trinomial_shape(h):
    """``(k, m)`` if ``h == 1 + (m-2) t^k + t^(2k)`` with ``k >= 1``, else None."""
    h = trim(h)
    s = len(h) - 1
    if s < 2 or s % 2 or h[0] != 1 or h[s] != 1:
        return None
    k = s // 2
    if any(h[i] for i in range(1, s) if i != k):
        return None
    return k, h[k] + 2


@lru_cache(maxsize=None)
def _family_canonical(spec):
    return canonical_form(trinomial_family(spec)).elements


def classify_trinomial_group(G):
    """The family a non-pyramid trinomial group belongs to, or None.

    None also covers groups whose h* is not of the form
    ``1 + (m-2) t^k + t^(2k)`` with ``k >= 2`` and ``m >= 3``.
    """
    shape = trinomial_shape(hstar_from_group(G))
    if shape is None:
        return None
    k, m = shape
    if k < 2 or m < 3 or is_lattice_pyramid(G):
        return None
    candidates = family_candidates(k, m, G.n - 1)
    if not candidates:
        return None
    target = canonical_form(G).elements
    for spec in candidates:
        if _family_canonical(spec) == target:
            return spec
    return None


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class EnumerationBounds:
    """Search space for :func:`enumerate_groups`.

    ``orders`` restricts the element orders that may occur (None: any);
    ``elementary`` switches to elementary abelian ``p``-groups enumerated as
    reduced row echelon generator matrices over ``F_p``.
    """

    n: int
    max_order: int
    max_rank: int | None = None
    orders: frozenset | None = None
    elementary: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.max_order < 1:
            raise ValueError("bounds must be positive")
        if self.max_order > DEFAULT_CAP:
            raise ValueError(f"max_order {self.max_order} exceeds the group cap {DEFAULT_CAP}")
        if self.max_rank is not None and self.max_rank < 1:
            raise ValueError("max_rank must be positive")
        if self.orders is not None:
            object.__setattr__(self, "orders", frozenset(self.orders))
            if any(o < 1 for o in self.orders):
                raise ValueError("orders must be positive")
        if self.elementary is not None and not is_prime(self.elementary):
            raise ValueError(f"{self.elementary} is not prime")

    @property
    def rank_limit(self):
        return self.n if self.max_rank is None else self.max_rank

    def admits(self, G):
        """Does the concrete group ``G`` fall inside these bounds?"""
        if G.n != self.n or G.order > self.max_order:
            return False
        orders = set(element_orders(G)) - {1}
        if self.orders is not None and not orders <= self.orders:
            return False
        if self.elementary is not None and not orders <= {self.elementary}:
            return False
        return group_rank(G) <= self.rank_limit


def group_rank(G):
    """Minimal number of generators of ``G``."""
    q = G.den
    rank = 0
    for p in range(2, q + 1):
        if q % p or not is_prime(p):
            continue
        torsion = sum(1 for e in G.elements if all((p * x) % q == 0 for x in e))
        r = 0
        while torsion > 1:
            torsion //= p
            r += 1
        rank = max(rank, r)
    return rank


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _invariant_types(max_order, max_rank, orders):
    """Chains ``q_1 | q_2 | ... | q_r`` (all ``q_i >= 2``) within the bounds."""

    def extend(chain, size):
        yield chain
        if len(chain) >= max_rank:
            return
        last = chain[-1] if chain else 1
        q = max(last, 2)
        while size * q <= max_order:
            if q % last == 0:
                yield from extend(chain + (q,), size * q)
            q += 1

    for chain in extend((), 1):
        # every divisor of the exponent occurs as an element order
        if chain and orders is not None:
            if any(x not in orders for x in _divisors(chain[-1]) if x > 1):
                continue
        yield chain


def _candidates_general(bounds):
    """Faithful column multisets for every invariant-factor type."""
    n = bounds.n
    for chain in _invariant_types(bounds.max_order, bounds.rank_limit, bounds.orders):
        if not chain:
            yield 1, [], [(0,) * n]
            continue
        E = chain[-1]
        scale = [E // q for q in chain]
        size = prod(chain)
        col_types = list(itertools.product(*(range(q) for q in chain)))
        for cols in itertools.combinations_with_replacement(col_types, n):
            gens = [tuple(c[j] * scale[j] for c in cols) for j in range(len(chain))]
            if any(sum(g) % E for g in gens):
                yield None
                continue
            elements = {(0,) * n}
            for g, q in zip(gens, chain):
                elements = {tuple((a + c * b) % E for a, b in zip(e, g))
                            for e in elements for c in range(q)}
            if len(elements) != size:
                yield None
                continue
            yield E, gens, elements


def _rref_rows(n, p, r):
    for pivots in itertools.combinations(range(n), r):
        pivot_set = set(pivots)
        free = [[c for c in range(piv + 1, n) if c not in pivot_set] for piv in pivots]
        choices = [itertools.product(range(p), repeat=len(f)) for f in free]
        for values in itertools.product(*(list(c) for c in choices)):
            rows = []
            for piv, cols, vals in zip(pivots, free, values):
                row = [0] * n
                row[piv] = 1
                for c, v in zip(cols, vals):
                    row[c] = v
                rows.append(tuple(row))
            yield rows


def _candidates_elementary(bounds):
    n, p = bounds.n, bounds.elementary
    r = 0
    while r <= min(bounds.rank_limit, n) and p**r <= bounds.max_order:
        for gens in _rref_rows(n, p, r):
            if any(sum(g) % p for g in gens):
                yield None
                continue
            elements = {(0,) * n}
            for g in gens:
                elements = {tuple((a + c * b) % p for a, b in zip(e, g))
                            for e in elements for c in range(p)}
            yield p, gens, elements
        r += 1


def count_candidates(bounds):
    """Number of raw candidates the enumerator inspects (including rejects)."""
    source = _candidates_elementary if bounds.elementary else _candidates_general
    return sum(1 for _ in source(bounds))


def enumerate_groups(bounds, accept=None, budget=DEFAULT_BUDGET, stats=None):
    """Yield every subgroup within ``bounds`` once, in canonical form.

    Only groups whose elements all have integer height are produced (those
    are the groups of lattice simplices).  ``accept(den, elements)`` can
    reject candidates before the comparatively costly canonicalization; the
    output is then every accepted group, still once per permutation class.
    ``stats`` (a dict) receives counters as the search runs.
    """
    source = _candidates_elementary if bounds.elementary else _candidates_general
    stats = stats if stats is not None else {}
    stats.update(candidates=0, valid=0, accepted=0, unique=0)
    seen = set()
    for item in source(bounds):
        stats["candidates"] += 1
        if stats["candidates"] > budget:
            raise BudgetExceededError(
                f"candidate budget {budget} exhausted", progress=dict(stats))
        if item is None:
            continue
        den, gens, elements = item
        if len(elements) > bounds.max_order:
            continue
        stats["valid"] += 1
        if accept is not None and not accept(den, elements):
            continue
        stats["accepted"] += 1
        G = SimplexGroup(bounds.n, den, tuple(sorted(elements)), tuple(gens))
        C = canonical_form(G)
        if C.elements in seen:
            continue
        seen.add(C.elements)
        stats["unique"] += 1
        yield C


def _heights_hist(den, elements):
    return trim(list(Counter(sum(e) // den for e in elements).get(i, 0)
                     for i in range(max(sum(e) // den for e in elements) + 1)))


def _nonpyramid(elements, n):
    covered = [False] * n
    for e in elements:
        for i, x in enumerate(e):
            if x:
                covered[i] = True
    return all(covered)


# ---------------------------------------------------------------------------
# classification check


@dataclass
class Finding:
    hstar: tuple
    k: int
    m: int
    d: int
    case: str
    pyramid: bool
    den: int
    generators: list

    def to_json(self):
        return json.dumps({
            "hstar": list(self.hstar), "k": self.k, "m": self.m, "d": self.d,
            "case": self.case, "pyramid": self.pyramid,
            "den": self.den, "generators": [list(g) for g in self.generators],
        })


@dataclass
class ClassificationReport:
    k: int
    d: int
    bounds: EnumerationBounds
    findings: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)

    @property
    def unexpected(self):
        return [f for f in self.findings if f.case == "UNEXPECTED"]

    @property
    def m_counts(self):
        return Counter(f.m for f in self.findings)

    @property
    def m_set(self):
        return set(self.m_counts)

    @property
    def duplicates(self):
        return sorted(m for m, c in self.m_counts.items() if c > 1)

    @property
    def missing(self):
        return sorted(m for m in self.expected if m not in self.m_set)

    @property
    def ok(self):
        return not self.unexpected and not self.duplicates and not self.missing

    def json_lines(self):
        return "\n".join(f.to_json() for f in self.findings)

    def summary(self):
        b = self.bounds
        scope = (f"n={b.n} max_order={b.max_order} max_rank={b.max_rank} "
                 f"orders={sorted(b.orders) if b.orders else 'any'}")
        if b.elementary:
            scope += f" elementary p={b.elementary} (restricted census)"
        lines = [
            f"classification check k={self.k} d={self.d}",
            f"scope: {scope}",
            f"candidates {self.stats.get('candidates', 0)}, valid {self.stats.get('valid', 0)}, "
            f"trinomial non-pyramid {self.stats.get('accepted', 0)}, "
            f"distinct {self.stats.get('unique', 0)}",
        ]
        for f in self.findings:
            lines.append(f"  m={f.m:<3} case {f.case:<12} h* = {format_hstar(f.hstar)}")
        lines.append(f"m-set {sorted(self.m_set)}; expected within scope {sorted(self.expected)}")
        lines.append(f"UNEXPECTED {len(self.unexpected)}, duplicate m {self.duplicates}, "
                     f"missing m {self.missing}")
        lines.append("RESULT " + ("OK" if self.ok else "FINDING"))
        return "\n".join(lines)


def _family_in_bounds(spec, bounds):
    return bounds.admits(trinomial_family(spec))


def verify_classification(k, d, bounds, budget=DEFAULT_BUDGET):
    """Enumerate, keep the non-pyramid groups with
    ``h* = 1 + (m-2) t^k + t^(2k)`` (``m >= 3``), and match each against the
    classified families.  Never stops on a mismatch; everything is reported.
    """
    if 2 * k > d + 1:
        raise ValueError(f"need 2k <= d+1, got k={k}, d={d}")
    if bounds.n != d + 1:
        raise ValueError(f"bounds are for n={bounds.n}, expected d+1={d + 1}")

    def accept(den, elements):
        if any(sum(e) % den for e in elements):
            return False
        shape = trinomial_shape(_heights_hist(den, elements))
        return (shape is not None and shape[0] == k and shape[1] >= 3
                and _nonpyramid(elements, bounds.n))

    report = ClassificationReport(k, d, bounds)
    for m in range(3, bounds.max_order + 1):
        specs = [s for s in family_candidates(k, m, d) if _family_in_bounds(s, bounds)]
        if specs:
            report.expected[m] = [str(s) for s in specs]
    found = []
    for G in enumerate_groups(bounds, accept=accept, budget=budget, stats=report.stats):
        h = hstar_from_group(G)
        spec = classify_trinomial_group(G)
        found.append(Finding(h, k, trinomial_shape(h)[1], d,
                             str(spec) if spec else "UNEXPECTED",
                             bool(is_lattice_pyramid(G)), G.den,
                             [list(g) for g in G.generators]))
    report.findings = sorted(found, key=lambda f: (f.m, f.case, f.generators))
    return report


# ---------------------------------------------------------------------------
# conjecture scan


@dataclass
class ConjectureReport:
    max_n: int
    max_order: int
    checked: int = 0
    hits: list = field(default_factory=list)
    counterexample: SimplexGroup | None = None
    equality_cases: list = field(default_factory=list)

    @property
    def equality_ok(self):
        """Every trinomial hit with vol = 9/2 deg has k = 1."""
        return all(k == 1 for k, _ in self.equality_cases)


def conjecture_census(max_n, max_order, max_rank=None, budget=DEFAULT_BUDGET):
    """Check ``a + b + 1 <= (4b+4) k`` for every ``h* = 1 + a t^k + b t^(2k)``
    with ``a >= 1`` and ``b >= 2`` among groups on at most ``max_n``
    coordinates of order at most ``max_order``.

    The same pass records every trinomial reaching vol = (9/2) deg.
    """
    report = ConjectureReport(max_n, max_order)

    def shape(den, elements):
        if any(sum(e) % den for e in elements):
            return None
        h = _heights_hist(den, elements)
        s = len(h) - 1
        if s < 2 or s % 2:
            return None
        k = s // 2
        if h[0] != 1 or any(h[i] for i in range(1, s) if i != k) or h[k] < 1:
            return None
        return k, h[k], h[s]

    def extremal(k, a, b):
        # vol = (9/2) deg, i.e. a + b + 1 = 9k
        return a + b + 1 == 9 * k

    def accept(den, elements):
        sh = shape(den, elements)
        return sh is not None and (sh[2] >= 2 or extremal(*sh))

    for n in range(1, max_n + 1):
        bounds = EnumerationBounds(n, max_order, max_rank)
        stats = {}
        for G in enumerate_groups(bounds, accept=accept, budget=budget, stats=stats):
            k, a, b = shape(G.den, G.elements)
            if extremal(k, a, b):
                report.equality_cases.append((k, G))
            if b < 2:
                continue
            report.hits.append((k, a, b, G))
            if a + b + 1 > (4 * b + 4) * k and report.counterexample is None:
                report.counterexample = G
        report.checked += stats.get("valid", 0)
    return report


def conjecture_scan(max_n, max_order, max_rank=None, budget=DEFAULT_BUDGET):
    """A counterexample group, or None when none exists within the bounds."""
    return conjecture_census(max_n, max_order, max_rank, budget).counterexample
