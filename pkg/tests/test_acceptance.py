"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line, shown in the "acceptance
criteria" section at the end of the pytest run, and fails if either the
check or its time budget is missed.  The module can
also be run directly: ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from math import gcd

import pytest

from hstarlab.classify import EnumerationBounds, conjecture_census, verify_classification
from hstarlab.constructions import (
    binomial_family,
    lattice_pyramid,
    parse_family,
    trinomial_family,
    white_cayley_group,
)
from hstarlab.core_lattice import (
    LatticeSimplex,
    count_lattice_points,
    hstar_by_counting,
    normalized_volume,
    random_simplex,
)
from hstarlab.simplex_group import (
    GroupElement,
    element_order,
    group_of_simplex,
    height,
    hstar_from_group,
    is_lattice_pyramid,
    negate,
    support,
)

SEED = 0
RESULTS = {}  # criterion number -> PASS/FAIL line, printed by conftest


def _report(number, title, ok, elapsed, limit, detail=""):
    ok = ok and elapsed < limit
    line = (f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} "
            f"({elapsed:.1f}s, limit {limit}s){' - ' + detail if detail else ''}")
    RESULTS[number] = line
    print(line)
    return ok


def trinomial(k, m):
    h = [0] * (2 * k + 1)
    h[0] = h[-1] = 1
    h[k] = m - 2
    return tuple(h)


def test_criterion_1_oracle_equivalence():
    rng = random.Random(SEED)
    start = time.perf_counter()
    bad = []
    for i in range(200):
        S = random_simplex(1 + i % 5, rng, bound=4)
        if hstar_from_group(group_of_simplex(S)) != hstar_by_counting(S):
            bad.append(S.vertices)
    elapsed = time.perf_counter() - start
    assert _report(1, "group route equals point counting on 200 random simplices",
                   not bad, elapsed, 30, f"{len(bad)} mismatches")


def test_criterion_2_golden_values():
    start = time.perf_counter()
    checks = {}
    T = LatticeSimplex([(0, 0), (3, 0), (0, 3)])
    checks["triangle"] = (hstar_by_counting(T) == (1, 7, 1)
                          and hstar_from_group(group_of_simplex(T)) == (1, 7, 1))
    B = trinomial_family("b:2:2:3")
    checks["b k=2 l=3"] = (hstar_from_group(B) == (1, 0, 6, 0, 1) and B.n == 8
                           and not is_lattice_pyramid(B)
                           and B.den == 2 and B.generators == (
                               (1, 0, 1, 0, 1, 0, 1, 0), (0, 1, 1, 0, 0, 1, 1, 0), (1,) * 8))
    C = trinomial_family("c:2:2:2")
    checks["c k=2 l=2"] = (hstar_from_group(C) == (1, 0, 7, 0, 1) and C.n == 6
                           and not is_lattice_pyramid(C)
                           and C.den == 3 and C.generators == ((1, 2, 0, 1, 2, 0), (1,) * 6))
    elapsed = time.perf_counter() - start
    failed = [k for k, v in checks.items() if not v]
    assert _report(2, "golden h*-values and reference generator matrices",
                   not failed, elapsed, 10, f"failed: {failed}" if failed else "")


FAMILY_SPECS = ([f"{c}:{k}" for c in ("a3", "a4-3k", "a4-4k", "a6", "a8") for k in (2, 3)]
                + ["b:2:2:3", "b:2:1:4", "b:4:4:3", "c:2:2:2", "c:3:1:3", "c:3:3:2"])


def test_criterion_3_family_contracts():
    start = time.perf_counter()
    failed = []
    for text in FAMILY_SPECS:
        spec = parse_family(text)
        G = trinomial_family(spec)
        d = 4 * spec.k - 1 if spec.case in ("A4-4k", "B") else 3 * spec.k - 1
        if not (hstar_from_group(G) == trinomial(spec.k, spec.m) and G.order == spec.m
                and not is_lattice_pyramid(G) and G.n - 1 == d == spec.d):
            failed.append(text)
    elapsed = time.perf_counter() - start
    assert _report(3, f"{len(FAMILY_SPECS)} trinomial families", not failed, elapsed, 10,
                   f"failed: {failed}" if failed else "")


def test_criterion_4_binomial_contracts():
    start = time.perf_counter()
    failed = []
    count = 0
    for m in range(2, 13):
        units = [a for a in range(1, m // 2 + 1) if gcd(a, m) == 1]
        for k in (1, 2, 3):
            for a in _multisets(units, k):
                count += 1
                G = white_cayley_group(k, m, a)
                if hstar_from_group(G) != (1,) + (0,) * (k - 1) + (m - 1,) or G.n != 2 * k:
                    failed.append(("white", k, m, a))
    for p, r in [(2, 2), (2, 3), (3, 2)]:
        for k in range(2, 9):
            num, step = 2 * k * (p**r - 1), p**r - p ** (r - 1)
            if num % step:
                continue
            d = num // step - 1
            count += 1
            G = binomial_family(p, r, k)
            if (step * (d + 1) != 2 * k * (p**r - 1) or G.n != d + 1
                    or hstar_from_group(G) != (1,) + (0,) * (k - 1) + (p**r - 1,)):
                failed.append(("code", p, r, k))
    elapsed = time.perf_counter() - start
    assert _report(4, f"{count} binomial groups", not failed and count, elapsed, 10,
                   f"failed: {failed}" if failed else "")


def _multisets(items, k):
    if k == 0:
        yield ()
        return
    for i, x in enumerate(items):
        for rest in _multisets(items[i:], k - 1):
            yield (x,) + rest


def test_criterion_5_classification_d5():
    start = time.perf_counter()
    bounds = EnumerationBounds(6, max_order=9, max_rank=2, orders={2, 3, 4, 6, 9})
    report = verify_classification(2, 5, bounds)
    elapsed = time.perf_counter() - start
    ok = (report.m_set == {3, 4, 6, 8, 9} and not report.unexpected
          and all(c == 1 for c in report.m_counts.values()))
    assert _report(5, "exhaustive k=2, d=5", ok, elapsed, 120,
                   f"m-set {sorted(report.m_set)}, UNEXPECTED {len(report.unexpected)}, "
                   f"{report.stats['candidates']} candidates")


def test_criterion_6_elementary_d7():
    start = time.perf_counter()
    bounds = EnumerationBounds(8, max_order=16, max_rank=4, elementary=2)
    report = verify_classification(2, 7, bounds)
    elapsed = time.perf_counter() - start
    ok = (report.m_set == {4, 8, 16} and not report.unexpected
          and all(c == 1 for c in report.m_counts.values()))
    assert _report(6, "exhaustive elementary 2-groups, k=2, d=7", ok, elapsed, 300,
                   f"m-set {sorted(report.m_set)}, UNEXPECTED {len(report.unexpected)}, "
                   f"{report.stats['candidates']} subspaces")


def test_criterion_7_invariants():
    rng = random.Random(SEED + 7)
    start = time.perf_counter()
    failed = set()
    for i in range(100):
        S = random_simplex(1 + i % 4, rng, bound=4)
        G = group_of_simplex(S)
        h = hstar_by_counting(S)
        if G.order != normalized_volume(S):
            failed.add("order = vol")
        if (h + (0,))[1] != count_lattice_points(S, 1) - S.dim - 1:
            failed.add("h*_1 = points - d - 1")
        q = G.den
        for e in G.elements:
            x = GroupElement(e, q)
            if len(support(x)) != height(x) + height(negate(x)):
                failed.add("support = ht(x) + ht(-x)")
            # all coprime multiples, on the raw numerators for speed
            order = element_order(x)
            zero = [a == 0 for a in e]
            for j in range(2, order):
                if gcd(j, order) == 1 and [(j * a) % q == 0 for a in e] != zero:
                    failed.add("supp(jx) = supp(x)")
        if S.dim <= 3:
            P = lattice_pyramid(S)
            if hstar_by_counting(P) != h or hstar_from_group(group_of_simplex(P)) != h:
                failed.add("pyramid invariance")
    elapsed = time.perf_counter() - start
    assert _report(7, "invariant suite on 100 random simplices", not failed, elapsed, 30,
                   f"failed: {sorted(failed)}" if failed else "")


def test_criterion_8_conjecture_scan():
    start = time.perf_counter()
    rep = conjecture_census(6, 12)
    elapsed = time.perf_counter() - start
    ok = rep.counterexample is None and rep.equality_ok
    assert _report(8, "conjecture scan, n <= 6, order <= 12", ok, elapsed, 120,
                   f"{rep.checked} groups, {len(rep.hits)} trinomials with b >= 2, "
                   f"{len(rep.equality_cases)} with vol = 9/2 deg, counterexample "
                   f"{'none' if rep.counterexample is None else rep.counterexample}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
