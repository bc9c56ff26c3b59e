"""
Exhaustive checks
=================

Enumerate every finite group (up to permuting coordinates) inside some
bounds and see which palindromic trinomials actually occur.  Then look for
trinomials 1 + a t^k + b t^(2k) that would break a + b + 1 <= (4b + 4) k.
"""

import time

from hstarlab.classify import EnumerationBounds, conjecture_census, verify_classification

t = time.perf_counter()
bounds = EnumerationBounds(n=6, max_order=12)
report = verify_classification(k=2, d=5, bounds=bounds)
print(report.summary())
print(f"({time.perf_counter() - t:.1f}s)\n")

t = time.perf_counter()
report = verify_classification(2, 7, EnumerationBounds(8, 16, max_rank=4, elementary=2))
print(report.summary())
print(f"({time.perf_counter() - t:.1f}s)\n")

census = conjecture_census(max_n=6, max_order=12)
print(f"{census.checked} groups, {len(census.hits)} trinomials with b >= 2")
worst = max(census.hits, key=lambda hit: (hit[1] + hit[2] + 1) / ((4 * hit[2] + 4) * hit[0]))
k, a, b, _ = worst
print(f"tightest: k={k} a={a} b={b}, a+b+1 = {a + b + 1} vs (4b+4)k = {(4 * b + 4) * k}")
print("counterexample:", census.counterexample)
