"""Burnside ring units for small finite groups.

The package computes the unit group of the Burnside ring of a small
finite group two independent ways (ghost-ring enumeration and the
genetic-basis construction for 2-groups) together with the supporting
machinery: subgroup lattices, tables of marks, bisets and their
multiplicative transport, genetic subgroups, and the exponential map.
"""

from .groups import (
    Group,
    GroupError,
    Section,
    Subgroup,
    TypeTag,
    build_family,
    center,
    classify_type,
    direct_product,
    group_from_cayley,
    group_from_permutations,
    is_normal,
    normalizer,
    quotient,
    section_group,
)
from .lattice import SubgroupLattice, lattice_of
from .ring import (
    BurnsideElement,
    MarkVector,
    NotIntegralError,
    UnitElement,
    UnitGroup,
    from_marks,
    is_unit,
    primitive_idempotent,
    table_of_marks,
)
from .genetics import genetic_basis, is_genetic, linked, normal_p_rank
from .units import (
    enumerate_units_bruteforce,
    exp_element,
    exp_image,
    units_via_genetic_basis,
    upsilon,
    verify_rank_theorem,
)

__version__ = "0.1.0"
