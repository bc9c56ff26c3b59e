"""Exact integer linear algebra and Ehrhart data by direct point counting.

Matrices are plain lists of lists of Python ints, so entries never overflow.
Everything here is independent of the group machinery in
:mod:`hstarlab.simplex_group`; ``hstar_by_counting`` is the reference the
group route is checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import DegenerateSimplexError, NegativeCoefficientError, RankDeficientError

__all__ = [
    "LatticeSimplex",
    "identity",
    "matmul",
    "transpose",
    "determinant",
    "rational_inverse",
    "smith_normal_form",
    "hermite_normal_form",
    "normalized_volume",
    "count_lattice_points",
    "count_interior_points",
    "count_lattice_points_box",
    "hstar_by_counting",
    "trim",
    "format_hstar",
    "random_simplex",
]


# ---------------------------------------------------------------------------
# small matrix helpers


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def _copy(A):
    return [list(row) for row in A]


def determinant(A):
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = _copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(A):
    """Inverse of a square matrix over Q, as lists of Fractions."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise DegenerateSimplexError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


# ---------------------------------------------------------------------------
# normal forms


def smith_normal_form(M):
    """Smith normal form ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative entries
    forming a divisor chain.  The pivot at each stage is the entry of smallest
    nonzero absolute value in the remaining block, scanning row by row and
    breaking ties towards the lowest index, so the output is deterministic.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = _copy(M)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = abs(A[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                return U, A, V
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row into the pivot row; the next pass
            # produces a strictly smaller pivot
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def hermite_normal_form(M):
    """Lower-triangular Hermite normal form by column operations.

    Returns ``(H, U)`` with ``M @ U == H`` and ``U`` unimodular.  ``M`` must
    have full row rank; ``H`` has positive diagonal, zeros right of the
    diagonal and entries left of each pivot reduced into ``[0, pivot)``.
    """
    r = len(M)
    c = len(M[0]) if r else 0
    if r > c:
        raise RankDeficientError(f"{r} rows cannot have full rank in {c} columns")
    H = _copy(M)
    U = identity(c)

    def col_op(dst, src, q):
        for row in H:
            row[dst] -= q * row[src]
        for row in U:
            row[dst] -= q * row[src]

    def col_swap(i, j):
        for row in H:
            row[i], row[j] = row[j], row[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    for i in range(r):
        row = H[i]
        while True:
            nz = [j for j in range(i, c) if row[j]]
            if not nz:
                raise RankDeficientError(f"row {i} is dependent on earlier rows")
            j = min(nz, key=lambda j: (abs(row[j]), j))
            if j != i:
                col_swap(i, j)
            if len(nz) == 1:
                break
            p = row[i]
            for j in range(i + 1, c):
                if row[j]:
                    col_op(j, i, row[j] // p)
        if row[i] < 0:
            for R in H:
                R[i] = -R[i]
            for R in U:
                R[i] = -R[i]
        p = row[i]
        for j in range(i):
            q = row[j] // p
            if q:
                col_op(j, i, q)
    return H, U


# ---------------------------------------------------------------------------
# simplices


@dataclass(frozen=True)
class LatticeSimplex:
    """A full-dimensional lattice simplex given by its ordered vertices.

    The vertex order is kept as given; it fixes the coordinate order of the
    associated finite group.
    """

    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise DegenerateSimplexError("a simplex needs at least one vertex")
        d = len(verts) - 1
        if any(len(v) != d for v in verts):
            raise DegenerateSimplexError(
                f"{len(verts)} vertices must live in Z^{d}, got lengths "
                f"{sorted({len(v) for v in verts})}")
        if d == 0:
            raise DegenerateSimplexError("dimension must be positive")
        if determinant(self.edge_matrix()) == 0:
            raise DegenerateSimplexError("vertices are affinely dependent")

    @property
    def dim(self):
        return len(self.vertices) - 1

    def edge_matrix(self):
        v0 = self.vertices[0]
        return [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]

    def homogeneous_matrix(self):
        """Rows ``(v_i, 1)``."""
        return [list(v) + [1] for v in self.vertices]


def normalized_volume(S):
    det = determinant(S.edge_matrix())
    if det == 0:
        raise DegenerateSimplexError("vertices are affinely dependent")
    return abs(det)


def _adjugate(M):
    det = determinant(M)
    inv = rational_inverse(M)
    adj = [[x * det for x in row] for row in inv]
    return [[int(x) for x in row] for row in adj], det


def _normalize(a, b):
    g = 0
    for x in a:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in a), b // g
    return tuple(a), b


def _facets(S, t, strict):
    """Inequalities ``a . x <= b`` cutting out the integer points of ``t*S``.

    With ``strict`` the inequalities describe integer points of the interior.
    """
    d = S.dim
    adj, det = _adjugate(S.homogeneous_matrix())
    s = 1 if det > 0 else -1
    out = []
    for i in range(d + 1):
        # det * lambda_i = (x, t) . adj[:, i]
        c = [s * adj[r][i] for r in range(d)]
        e = s * adj[d][i]
        out.append(_normalize([-x for x in c], e * t - (1 if strict else 0)))
    return out


def _projections(ineqs, d):
    """Fourier-Motzkin projections of a simplex-like system.

    Returns ``levels`` where ``levels[j]`` lists the inequalities of the
    projection onto ``x_0..x_j`` that involve ``x_j``, each as
    ``(prefix_coeffs, coeff_j, rhs)``; ``None`` if the system is infeasible.
    Chernikov's rule (at most ``k+1`` parents after ``k`` eliminations) keeps
    the systems small.
    """
    system = {}
    for idx, (a, b) in enumerate(ineqs):
        if not any(a):
            if b < 0:
                return None
            continue
        if a not in system or b < system[a][0]:
            system[a] = (b, frozenset([idx]))
    levels = [None] * d
    for j in range(d - 1, -1, -1):
        levels[j] = [(a[:j], a[j], b) for a, (b, _) in system.items() if a[j]]
        if j == 0:
            break
        eliminated = d - j
        nxt = {}

        def keep(a, b, o):
            if not any(a):
                return b >= 0
            if a not in nxt or b < nxt[a][0]:
                nxt[a] = (b, o)
            return True

        pos, neg = [], []
        for a, (b, o) in system.items():
            if a[j] > 0:
                pos.append((a, b, o))
            elif a[j] < 0:
                neg.append((a, b, o))
            elif not keep(a[:j], b, o):
                return None
        for ap, bp, op in pos:
            for an, bn, on in neg:
                o = op | on
                if len(o) > eliminated + 1:
                    continue
                lp, ln = -an[j], ap[j]
                a = [lp * x + ln * y for x, y in zip(ap[:j], an[:j])]
                if not keep(*_normalize(a, lp * bp + ln * bn), o):
                    return None
        system = nxt
    return levels


def _bounds(level, prefix):
    lo = hi = None
    for pre, c, b in level:
        r = b
        for x, y in zip(pre, prefix):
            r -= x * y
        if c > 0:
            v = r // c
            if hi is None or v < hi:
                hi = v
        else:
            v = -(r // -c)
            if lo is None or v > lo:
                lo = v
    return lo, hi


def _count(ineqs, d):
    levels = _projections(ineqs, d)
    if levels is None:
        return 0
    last = levels[d - 1]

    def rec(j, prefix):
        lo, hi = _bounds(levels[j], prefix)
        if lo > hi:
            return 0
        if j == d - 1:
            return hi - lo + 1
        if j == d - 2:
            # innermost loop: evaluate the last level incrementally
            total = 0
            base = []
            for pre, c, b in last:
                r = b
                for x, y in zip(pre, prefix):
                    r -= x * y
                base.append((r, pre[j], c))
            for x in range(lo, hi + 1):
                l2 = h2 = None
                for r, s, c in base:
                    r -= s * x
                    if c > 0:
                        v = r // c
                        if h2 is None or v < h2:
                            h2 = v
                    else:
                        v = -(r // -c)
                        if l2 is None or v > l2:
                            l2 = v
                if h2 >= l2:
                    total += h2 - l2 + 1
            return total
        return sum(rec(j + 1, prefix + (x,)) for x in range(lo, hi + 1))

    return rec(0, ())


def count_lattice_points(S, t):
    """Number of integer points in the dilate ``t * S``.

    Points are enumerated coordinate by coordinate inside exact projections
    of the dilate, so only integer prefixes that lie over the simplex are
    ever visited.
    """
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    if t == 0:
        return 1
    return _count(_facets(S, t, strict=False), S.dim)


def count_interior_points(S, t=1):
    """Number of integer points in the relative interior of ``t * S``."""
    if t <= 0:
        return 0
    return _count(_facets(S, t, strict=True), S.dim)


def count_lattice_points_box(S, t, strict=False):
    """Bounding-box scan with exact barycentric membership.

    Slow; kept as an independent check of :func:`count_lattice_points` on
    small inputs.
    """
    if t == 0:
        return 0 if strict else 1
    d = S.dim
    inv = rational_inverse(S.homogeneous_matrix())
    lows = [t * min(v[i] for v in S.vertices) for i in range(d)]
    highs = [t * max(v[i] for v in S.vertices) for i in range(d)]
    count = 0
    for x in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        point = list(x) + [t]
        lam = [sum(p * inv[r][c] for r, p in enumerate(point)) for c in range(d + 1)]
        if strict:
            count += all(l > 0 for l in lam)
        else:
            count += all(l >= 0 for l in lam)
    return count


def trim(coeffs):
    """Drop trailing zeros; the constant term always stays."""
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def hstar_by_counting(S):
    """h*-polynomial from the point counts of the dilates ``0..d``."""
    d = S.dim
    counts = [count_lattice_points(S, t) for t in range(d + 1)]
    h = []
    for i in range(d + 1):
        h.append(sum((-1) ** (i - j) * comb(d + 1, i - j) * counts[j]
                      for j in range(i + 1)))
    if any(c < 0 for c in h):
        raise NegativeCoefficientError(f"negative h*-coefficient in {h} for {S}")
    return trim(h)


def format_hstar(h, var="t"):
    """Human-readable form, e.g. ``1 + 7t + t^2``."""
    terms = []
    for i, c in enumerate(h):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


def random_simplex(dim, rng, bound=4):
    """Uniformly drawn vertices in ``[-bound, bound]^dim``, retried until
    they span a full-dimensional simplex.  ``rng`` is a ``random.Random``."""
    while True:
        verts = [[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(dim + 1)]
        edges = [[a - b for a, b in zip(v, verts[0])] for v in verts[1:]]
        if determinant(edges) != 0:
            return LatticeSimplex(verts)
