"""Ehrhart h*-polynomials of lattice simplices via their finite groups."""

from .core_lattice import (
    LatticeSimplex,
    count_lattice_points,
    format_hstar,
    hstar_by_counting,
    normalized_volume,
    random_simplex,
)
from .simplex_group import (
    GroupElement,
    SimplexGroup,
    canonical_form,
    group_of_simplex,
    hstar_from_group,
    is_lattice_pyramid,
    simplex_of_group,
)
from .constructions import (
    FamilySpec,
    binomial_family,
    cayley_simplex,
    lattice_pyramid,
    parse_family,
    simplex_code_generator,
    trinomial_family,
    white_cayley_group,
)

__version__ = "0.1.0"
