"""
Simplices and their groups
==========================

Two independent ways to get the h*-polynomial of a lattice simplex: count
lattice points in dilates, or list the finite group of the simplex and take
the histogram of element heights.
"""

from hstarlab import (
    LatticeSimplex,
    group_of_simplex,
    hstar_by_counting,
    hstar_from_group,
    lattice_pyramid,
    simplex_of_group,
    format_hstar,
)
from hstarlab.simplex_group import is_lattice_pyramid

# the triangle with 10 lattice points
T = LatticeSimplex([(0, 0), (3, 0), (0, 3)])
print("counting:", format_hstar(hstar_by_counting(T)))

G = group_of_simplex(T)
print("group of order", G.order, "with elements")
for x in G.members():
    print("   ", x)
print("heights:", format_hstar(hstar_from_group(G)))

# pyramids leave h* alone but add a coordinate that every element ignores
P = lattice_pyramid(T)
print("pyramid:", format_hstar(hstar_by_counting(P)),
      "zero coordinates", sorted(is_lattice_pyramid(group_of_simplex(P))))

# and the correspondence goes back: a group gives a simplex
S = simplex_of_group(G)
print("rebuilt vertices:", S.vertices)
print("same group again:", group_of_simplex(S) == G)
