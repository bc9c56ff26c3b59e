"""Finite subgroups of (Q/Z)^n attached to lattice simplices.

For a simplex with ordered vertices ``v_0..v_d`` the group consists of the
vectors ``x`` in ``[0,1)^(d+1)`` with ``sum x_i (v_i, 1)`` integral.  A group
is stored against a single common denominator ``den`` (its exponent), so an
element is a tuple of integers in ``[0, den)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .core_lattice import (
    LatticeSimplex,
    determinant,
    hermite_normal_form,
    rational_inverse,
    smith_normal_form,
    transpose,
    trim,
)
from .errors import (
    CanonicalizationBudgetError,
    DegenerateSimplexError,
    GroupTooLargeError,
    NonIntegerHeightError,
)

DEFAULT_CAP = 10**6
CANONICAL_BUDGET = 10**5


@dataclass(frozen=True)
class GroupElement:
    """A point of (Q/Z)^n, stored as ``num / den`` in lowest common terms."""

    num: tuple
    den: int = 1

    def __post_init__(self):
        den = int(self.den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        num = tuple(int(x) % den for x in self.num)
        g = den
        for x in num:
            g = gcd(g, x)
        object.__setattr__(self, "num", tuple(x // g for x in num))
        object.__setattr__(self, "den", den // g)

    @classmethod
    def from_fractions(cls, coords):
        coords = [Fraction(c) for c in coords]
        q = lcm(1, *(c.denominator for c in coords))
        return cls(tuple(int(c * q) for c in coords), q)

    def fractions(self):
        return tuple(Fraction(x, self.den) for x in self.num)

    def __len__(self):
        return len(self.num)

    def __add__(self, other):
        if len(other) != len(self):
            raise ValueError("length mismatch")
        q = lcm(self.den, other.den)
        a, b = q // self.den, q // other.den
        return GroupElement(tuple(a * x + b * y for x, y in zip(self.num, other.num)), q)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return self + negate(other)

    def __mul__(self, j):
        return multiple(j, self)

    __rmul__ = __mul__

    def __repr__(self):
        inner = ", ".join(str(f) for f in self.fractions())
        return f"GroupElement({inner})"


def negate(x):
    return GroupElement(tuple(-a for a in x.num), x.den)


def multiple(j, x):
    return GroupElement(tuple(j * a for a in x.num), x.den)


def element_order(x):
    # after reduction the denominator is the lcm of the coordinate denominators
    return x.den


def support(x):
    return frozenset(i for i, a in enumerate(x.num) if a)


def height(x):
    s = sum(x.num)
    if s % x.den:
        raise NonIntegerHeightError(f"{x!r} has coordinate sum {Fraction(s, x.den)}")
    return s // x.den


# ---------------------------------------------------------------------------


def _span(gens, q, n, cap):
    elements = {(0,) * n}
    kept = []
    for g in gens:
        if g in elements:
            continue
        kept.append(g)
        order = q // gcd(q, *g)
        new = set()
        for e in elements:
            for c in range(order):
                new.add(tuple((a + c * b) % q for a, b in zip(e, g)))
            if len(new) > cap:
                raise GroupTooLargeError(f"group exceeds the cap of {cap} elements")
        elements = new
    return elements, kept


@dataclass(frozen=True, eq=False)
class SimplexGroup:
    """A finite subgroup of (Q/Z)^n with all of its elements listed.

    ``elements`` and ``generators`` hold integer tuples scaled by ``den``,
    which is the exponent of the group.  Equality ignores the generators.
    """

    n: int
    den: int
    elements: tuple
    generators: tuple = field(default=())

    def __eq__(self, other):
        if not isinstance(other, SimplexGroup):
            return NotImplemented
        return (self.n, self.den, self.elements) == (other.n, other.den, other.elements)

    def __hash__(self):
        return hash((self.n, self.den, self.elements))

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    @classmethod
    def from_generators(cls, rows, den=None, n=None, cap=DEFAULT_CAP):
        """Build the subgroup generated by ``rows``.

        With ``den`` given, rows are integer numerators over ``den``; otherwise
        each entry is anything :class:`fractions.Fraction` accepts.
        """
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise ValueError("need n when there are no generators")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("generator rows must all have length n")
        if den is None:
            fr = [[Fraction(x) for x in r] for r in rows]
            den = lcm(1, *(x.denominator for r in fr for x in r))
            rows = [[int(x * den) for x in r] for r in fr]
        q = int(den)
        gens = [tuple(int(x) % q for x in r) for r in rows]
        # shrink to the exponent so equal groups compare equal
        g = q
        for r in gens:
            for x in r:
                g = gcd(g, x)
        q //= g
        gens = [tuple(x // g for x in r) for r in gens]
        elements, kept = _span(gens, q, n, cap)
        return cls(n, q, tuple(sorted(elements)), tuple(kept))

    def members(self):
        return [GroupElement(e, self.den) for e in self.elements]

    def generator_elements(self):
        return [GroupElement(g, self.den) for g in self.generators]

    def heights(self):
        q = self.den
        out = []
        for e in self.elements:
            s = sum(e)
            if s % q:
                raise NonIntegerHeightError(
                    f"element {GroupElement(e, q)!r} has non-integer height")
            out.append(s // q)
        return out

    def permuted(self, perm):
        """Group with new coordinate ``i`` taken from old coordinate ``perm[i]``."""
        els = tuple(sorted(tuple(e[p] for p in perm) for e in self.elements))
        gens = tuple(tuple(g[p] for p in perm) for g in self.generators)
        return SimplexGroup(self.n, self.den, els, gens)

    def __repr__(self):
        return f"SimplexGroup(n={self.n}, order={self.order}, den={self.den})"


def group_of_simplex(S, cap=DEFAULT_CAP):
    """The group of ``S`` in the coordinate order of its vertices.

    With ``M`` the matrix of rows ``(v_i, 1)`` and ``U M V = D`` its Smith
    form, the group is generated by the rows of ``D^{-1} U`` modulo 1.
    """
    M = S.homogeneous_matrix()
    vol = abs(determinant(M))
    if vol == 0:
        raise DegenerateSimplexError("vertices are affinely dependent")
    if vol > cap:
        raise GroupTooLargeError(f"volume {vol} exceeds the cap of {cap}")
    n = len(M)
    U, D, _ = smith_normal_form(M)
    factors = [D[i][i] for i in range(n)]
    q = max(factors)
    gens = []
    for i, d_i in enumerate(factors):
        if d_i > 1:
            s = q // d_i
            gens.append((tuple((s * u) % q for u in U[i]), d_i))
    elements = [(0,) * n]
    for g, order in gens:
        elements = [tuple((a + c * b) % q for a, b in zip(e, g))
                    for e in elements for c in range(order)]
    return SimplexGroup(n, q, tuple(sorted(elements)), tuple(g for g, _ in gens))


def simplex_of_group(G):
    """A lattice simplex whose group is exactly ``G``, coordinates in order.

    ``L`` is the lattice spanned by ``Z^n`` and the generators.  With ``B`` a
    basis of ``L`` (rows) and ``W`` unimodular with last column ``B 1``, the
    rows of ``B^{-1} W`` are ``(v_i, 1)``.  Requires integer heights.
    """
    n, q = G.n, G.den
    for g in G.generators:
        if sum(g) % q:
            raise NonIntegerHeightError(
                f"generator {GroupElement(g, q)!r} has non-integer height")
    if n < 2:
        raise DegenerateSimplexError("need at least two coordinates for a simplex")
    stacked = [list(g) for g in G.generators] + [[q * int(i == j) for j in range(n)]
                                                 for i in range(n)]
    H, _ = hermite_normal_form(transpose(stacked))
    Bq = [[H[r][c] for r in range(n)] for c in range(n)]  # basis rows of q*L
    inv = rational_inverse(Bq)
    Binv = [[x * q for x in row] for row in inv]
    if any(x.denominator != 1 for row in Binv for x in row):
        raise AssertionError("lattice does not contain Z^n")
    Binv = [[int(x) for x in row] for row in Binv]
    w = [sum(row) // q for row in Bq]  # heights of the basis vectors
    _, U1 = hermite_normal_form([w])
    W0 = transpose([[int(x) for x in row] for row in rational_inverse(U1)])
    W = [row[1:] + row[:1] for row in W0]
    M = [[sum(a * b for a, b in zip(Binv[i], col)) for col in zip(*W)] for i in range(n)]
    if any(row[-1] != 1 for row in M):
        raise AssertionError("homogenizing column came out wrong")
    v0 = M[0][:-1]
    return LatticeSimplex([[a - b for a, b in zip(row[:-1], v0)] for row in M])


def hstar_from_group(G):
    """h*-coefficients as the histogram of element heights."""
    counts = Counter(G.heights())
    return trim([counts.get(i, 0) for i in range(max(counts) + 1)])


def is_lattice_pyramid(G):
    """Coordinates on which every element vanishes.

    The set is empty exactly when a realizing simplex is not a lattice
    pyramid, so its truth value answers the question directly.
    """
    return frozenset(i for i in range(G.n) if all(g[i] == 0 for g in G.generators))


def element_orders(G):
    """Multiset of element orders as a Counter."""
    q = G.den
    return Counter(q // gcd(q, *e) for e in G.elements)


def canonical_form(G, budget=CANONICAL_BUDGET):
    """Representative of ``G`` under permutation of coordinates.

    Coordinates are placed one at a time.  After ``j`` placements the sorted
    list of length-``j`` row prefixes must be lexicographically minimal; all
    placements achieving the minimum are kept, with placements that pick
    identical column vectors merged.  The final sorted element list is the
    lexicographically least one reachable this way, and it depends only on
    the permutation class of ``G``.
    """
    return G.permuted(canonical_permutation(G, budget))


def canonical_permutation(G, budget=CANONICAL_BUDGET):
    n = G.n
    cols = [tuple(e[c] for e in G.elements) for c in range(n)]
    states = {(): ()}
    nodes = 0
    for _ in range(n):
        best = None
        nxt = {}
        for key, perm in states.items():
            used = set(perm)
            tried = set()
            for c in range(n):
                if c in used or cols[c] in tried:
                    continue
                tried.add(cols[c])
                nodes += 1
                if nodes > budget:
                    raise CanonicalizationBudgetError(
                        f"canonical search exceeded {budget} nodes on {G!r}")
                new_key = key + (cols[c],)
                prefixes = tuple(sorted(zip(*new_key)))
                if best is None or prefixes < best:
                    best = prefixes
                    nxt = {new_key: perm + (c,)}
                elif prefixes == best and new_key not in nxt:
                    nxt[new_key] = perm + (c,)
        states = nxt
    return next(iter(states.values())) if n else ()
