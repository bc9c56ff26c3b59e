"""Explicit simplices and groups: pyramids, Cayley joins, simplex codes and
the binomial and palindromic trinomial families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .core_lattice import LatticeSimplex
from .errors import (
    DimensionMismatchError,
    DivisibilityError,
    InvalidSpecError,
    NotCoprimeError,
    NotPrimeError,
    NumericalConditionError,
    RangeError,
)
from .simplex_group import SimplexGroup


def is_prime(p):
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


# ---------------------------------------------------------------------------
# geometric constructions


def lattice_pyramid(S):
    """``conv(S x {0}, e_{d+1})``; accepts a simplex or a bare vertex list."""
    verts = S.vertices if isinstance(S, LatticeSimplex) else tuple(tuple(v) for v in S)
    dim = len(verts[0])
    out = [tuple(v) + (0,) for v in verts] + [(0,) * dim + (1,)]
    return LatticeSimplex(out)


def cayley(polytopes):
    """Vertices of ``conv(e_1 x P_1, ..., e_n x P_n)`` in ``Z^n x Z^t``.

    Each polytope is a list of points (or a LatticeSimplex).  Blocks and the
    points inside them keep their input order.
    """
    pts = [P.vertices if isinstance(P, LatticeSimplex) else [tuple(v) for v in P]
           for P in polytopes]
    if not pts:
        raise DimensionMismatchError("need at least one polytope")
    dims = {len(v) for P in pts for v in P}
    if len(dims) != 1:
        raise DimensionMismatchError(f"polytopes live in different dimensions {sorted(dims)}")
    n = len(pts)
    return tuple(tuple(int(i == j) for j in range(n)) + tuple(v)
                 for i, P in enumerate(pts) for v in P)


def cayley_simplex(polytopes):
    """The Cayley polytope as a full-dimensional simplex.

    The definition places it in the hyperplane where the first ``n``
    coordinates sum to 1; dropping the first coordinate maps that hyperplane
    isomorphically onto the integer lattice of one dimension less.
    """
    return LatticeSimplex([v[1:] for v in cayley(polytopes)])


# ---------------------------------------------------------------------------
# codes over F_p


@dataclass(frozen=True)
class FpMatrix:
    p: int
    rows: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        if len({len(r) for r in rows}) > 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def columns(self):
        return list(zip(*self.rows))

    def __neg__(self):
        return FpMatrix(self.p, [[-x for x in r] for r in self.rows])

    def hstack(self, *others):
        rows = [list(r) for r in self.rows]
        for o in others:
            for r, extra in zip(rows, o.rows):
                r.extend(extra)
        return FpMatrix(self.p, rows)

    def with_zero_column(self):
        return FpMatrix(self.p, [list(r) + [0] for r in self.rows])

    def row_span(self):
        """All vectors of the row space, as tuples."""
        span = set()
        for coeffs in itertools.product(range(self.p), repeat=len(self.rows)):
            v = [0] * self.shape[1]
            for c, r in zip(coeffs, self.rows):
                if c:
                    v = [(a + c * b) % self.p for a, b in zip(v, r)]
            span.add(tuple(v))
        return span


def simplex_code_generator(p, r):
    """Generator matrix of the ``r``-dimensional simplex code over ``F_p``.

    One column per line of ``F_p^r``, represented by the vector whose first
    nonzero entry is 1.  Columns run in colexicographic order (the last
    coordinate is most significant), so for ``p = 2`` column ``j`` is the
    binary expansion of ``j`` read top down from the least significant bit.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if r < 1:
        raise RangeError("code dimension must be at least 1")
    cols = []
    for v in itertools.product(range(p), repeat=r):
        v = v[::-1]
        lead = next((x for x in v if x), 0)
        if lead == 1:
            cols.append(v)
    return FpMatrix(p, [[c[i] for c in cols] for i in range(r)])


def _group(den, rows):
    return SimplexGroup.from_generators(rows, den=den)


def binomial_family(p, r, k, d=None):
    """Group of the linear code ``(A, ..., A)`` (p = 2) or ``(A, -A, ...)``.

    ``A`` is the simplex code of dimension ``r``; the code length ``d + 1``
    must satisfy ``(p^r - p^(r-1)) (d + 1) = 2k (p^r - 1)``.  The resulting
    simplex has h* = 1 + (p^r - 1) t^k.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if k < 2:
        raise RangeError("k must be at least 2")
    if r < 1:
        raise RangeError("r must be at least 1")
    num = 2 * k * (p**r - 1)
    step = p**r - p ** (r - 1)
    if d is None:
        if num % step:
            raise NumericalConditionError(
                f"no integer d with ({step})(d+1) = {num} for p={p}, r={r}, k={k}")
        d = num // step - 1
    elif step * (d + 1) != num:
        raise NumericalConditionError(
            f"({step})({d}+1) != 2*{k}*({p}^{r}-1) for p={p}, r={r}")
    A = simplex_code_generator(p, r)
    if p == 2:
        # k / 2^(r-2) copies, written without negative exponents
        if (2 * k) % 2 ** (r - 1):
            raise DivisibilityError(f"2^{r - 2} does not divide k={k}")
        block, reps = A, 2 * k // 2 ** (r - 1)
    else:
        if k % p ** (r - 1):
            raise DivisibilityError(f"{p}^{r - 1} does not divide k={k}")
        block, reps = A.hstack(-A), k // p ** (r - 1)
    full = block.hstack(*([block] * (reps - 1)))
    if full.shape[1] != d + 1:
        raise AssertionError("code length disagrees with d")
    return _group(p, full.rows)


def white_cayley_group(k, m, a):
    """Cyclic group generated by ``(a_1/m, (m-a_1)/m, ..., a_k/m, (m-a_k)/m)``.

    Each ``a_i`` is replaced by ``m - a_i`` when it exceeds ``m/2``.
    """
    a = list(a)
    if k < 1 or len(a) != k:
        raise InvalidSpecError(f"need exactly k={k} values, got {a}")
    if m < 2:
        raise RangeError("m must be at least 2")
    row = []
    for x in a:
        if not 0 < x < m:
            raise RangeError(f"a_i={x} outside (0, {m})")
        if gcd(x, m) != 1:
            raise NotCoprimeError(f"gcd({x}, {m}) != 1")
        x = min(x, m - x)
        row += [x, m - x]
    return _group(m, [row])


# ---------------------------------------------------------------------------
# palindromic trinomial families

CASES = ("A3", "A4-3k", "A4-4k", "A6", "A8", "B", "C")


@dataclass(frozen=True)
class FamilySpec:
    """One family from the trinomial classification.

    ``a`` and ``ell`` are used by cases B and C only, where ``k`` must equal
    ``2^(ell-3) a`` respectively ``3^(ell-2) a``.
    """

    case: str
    k: int
    a: int | None = None
    ell: int | None = None

    def __post_init__(self):
        case = self.case.upper().replace("K", "k")
        if case not in CASES:
            raise InvalidSpecError(f"unknown case {self.case!r}; expected one of {CASES}")
        object.__setattr__(self, "case", case)
        if self.k < 2:
            raise InvalidSpecError(f"k={self.k} violates k >= 2")
        if case in ("B", "C"):
            if self.a is None or self.ell is None:
                raise InvalidSpecError(f"case {case} needs a and ell")
            if self.a < 1:
                raise InvalidSpecError(f"a={self.a} violates a >= 1")
            if case == "B":
                if self.ell < 3:
                    raise InvalidSpecError(f"ell={self.ell} violates ell >= 3")
                if (self.a, self.ell) == (1, 3):
                    raise InvalidSpecError("(a, ell) = (1, 3) is excluded")
                if self.k != 2 ** (self.ell - 3) * self.a:
                    raise InvalidSpecError(f"k={self.k} != 2^(ell-3) a = "
                                           f"{2 ** (self.ell - 3) * self.a}")
            else:
                if self.ell < 2:
                    raise InvalidSpecError(f"ell={self.ell} violates ell >= 2")
                if (self.a, self.ell) == (1, 2):
                    raise InvalidSpecError("(a, ell) = (1, 2) is excluded")
                if self.k != 3 ** (self.ell - 2) * self.a:
                    raise InvalidSpecError(f"k={self.k} != 3^(ell-2) a = "
                                           f"{3 ** (self.ell - 2) * self.a}")
        elif self.a is not None or self.ell is not None:
            raise InvalidSpecError(f"case {case} takes no a/ell parameters")

    @property
    def m(self):
        return {"A3": 3, "A4-3k": 4, "A4-4k": 4, "A6": 6, "A8": 8,
                "B": 2 ** (self.ell or 0), "C": 3 ** (self.ell or 0)}[self.case]

    @property
    def d(self):
        k = self.k
        if self.case == "A4-4k":
            return 4 * k - 1
        if self.case == "B":
            return 2 ** (self.ell - 1) * self.a - 1
        if self.case == "C":
            return 3 ** (self.ell - 1) * self.a - 1
        return 3 * k - 1

    def __str__(self):
        s = f"{self.case.lower()}:{self.k}"
        if self.case in ("B", "C"):
            s += f":{self.a}:{self.ell}"
        return s

    @cached_property
    def hstar(self):
        h = [0] * (2 * self.k + 1)
        h[0] = h[-1] = 1
        h[self.k] = self.m - 2
        return tuple(h)


def parse_family(text):
    """Parse ``case:k[:a:ell]``, e.g. ``b:2:2:3`` or ``a6:2``."""
    parts = text.strip().split(":")
    try:
        nums = [int(x) for x in parts[1:]]
    except ValueError:
        raise InvalidSpecError(f"non-integer parameter in {text!r}") from None
    if len(nums) == 1:
        return FamilySpec(parts[0], nums[0])
    if len(nums) == 3:
        return FamilySpec(parts[0], nums[0], nums[1], nums[2])
    raise InvalidSpecError(f"expected case:k or case:k:a:ell, got {text!r}")


def family_matrix(spec):
    """``(den, rows)`` of the generator matrix, in colex column order."""
    k = spec.k
    c = spec.case
    if c == "A3":
        return 3, [[1] * 3 * k]
    if c == "A4-3k":
        return 4, [[1] * 2 * k + [2] * k]
    if c == "A4-4k":
        return 2, [[1] * 2 * k + [0] * 2 * k, [1] * 4 * k]
    if c == "A6":
        return 6, [[1] * k + [2] * k + [3] * k]
    if c == "A8":
        return 4, [[2] * k + [0] * k + [2] * k, [1] * 2 * k + [2] * k]
    if c == "B":
        block = simplex_code_generator(2, spec.ell - 1).with_zero_column()
        p = 2
    else:
        A = simplex_code_generator(3, spec.ell - 1)
        block = A.hstack(-A).with_zero_column()
        p = 3
    full = block.hstack(*([block] * (spec.a - 1)))
    rows = [list(r) for r in full.rows] + [[1] * full.shape[1]]
    return p, rows


def trinomial_family(spec):
    """Group of the non-pyramid simplex with h* = 1 + (m-2) t^k + t^(2k)."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    den, rows = family_matrix(spec)
    G = _group(den, rows)
    if G.n != spec.d + 1 or G.order != spec.m:
        raise AssertionError(f"{spec} built a group of order {G.order} on {G.n} coordinates")
    return G
