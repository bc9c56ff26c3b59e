"""
Palindromic trinomials
======================

Every non-pyramid simplex with h* = 1 + (m-2) t^k + t^(2k), k >= 2, comes
from one of a handful of families.  Build each one, check its h*, and
reconstruct an honest simplex from the group for the smaller ones.
"""

from hstarlab import format_hstar, hstar_by_counting, parse_family, simplex_of_group, trinomial_family
from hstarlab.formats import group_to_text
from hstarlab.simplex_group import hstar_from_group

specs = ["a3:2", "a4-3k:2", "a4-4k:2", "a6:2", "a8:2", "b:2:2:3", "b:2:1:4", "c:2:2:2", "c:3:1:3"]

print(f"{'family':10} {'m':>3} {'d':>3}  h*")
for text in specs:
    spec = parse_family(text)
    G = trinomial_family(spec)
    print(f"{text:10} {spec.m:>3} {spec.d:>3}  {format_hstar(hstar_from_group(G))}")

# the m = 8 group in dimension 7, as a generator file
print()
print(group_to_text(trinomial_family("b:2:2:3")))

# counting on an actual simplex agrees
S = simplex_of_group(trinomial_family("c:2:2:2"))
print("c:2:2:2 simplex, counted:", format_hstar(hstar_by_counting(S)))
