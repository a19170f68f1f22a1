"""The unit group of a Burnside ring, computed two independent ways.

Brute force: walk every +-1 mark vector in Gray-code order, reusing the
scaled inverse of the table of marks so each candidate costs one integer
update, and keep the integral ones.  Construction: transport canonical
faithful generators up from the sections attached to a genetic basis.
The two must agree; that agreement is the central cross-check of the
whole package.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .bisets import (
    Biset,
    VirtualBiset,
    indinf_biset,
    transport_unit,
    transport_virtual,
)
from .genetics import GeneticBasis, genetic_basis
from .groups import (
    Group,
    GroupError,
    Section,
    Subgroup,
    TypeTag,
    build_family,
    center,
    classify_type,
    normalizer,
    prime_of,
)
from .lattice import SubgroupLattice, lattice_of
from .ring import (
    BurnsideElement,
    UnitElement,
    UnitGroup,
    identity_element,
    table_of_marks,
    transitive_element,
)

DEFAULT_BUDGET = 1 << 24
BUDGET_ENV_VAR = "BURNSIDE_BUDGET"


class BudgetError(RuntimeError):
    """The brute-force candidate count exceeds the configured budget."""


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def minus_identity(lattice: SubgroupLattice) -> UnitElement:
    """The unit -G/G (every mark equal to -1)."""
    return UnitElement.from_signs(lattice, (1 << lattice.num_classes) - 1)


# -- brute-force enumeration -----------------------------------------------------


_BRUTE_CACHE: dict[SubgroupLattice, UnitGroup] = {}


def enumerate_units_bruteforce(lattice: SubgroupLattice,
                               budget: int | None = None) -> UnitGroup:
    """Every unit of B(G), found by testing all +-1 mark vectors.

    A sign vector is a unit iff |G| divides every entry of
    sum_j m_j * (|G| M^-1 e_j); flipping one sign updates that Gray-code
    accumulator in O(classes) integer operations.
    """
    r = lattice.num_classes
    limit = resolve_budget(budget)
    if (1 << r) > limit:
        raise BudgetError(
            f"{lattice.group.name} needs 2^{r} candidates, over budget {limit}")
    cached = _BRUTE_CACHE.get(lattice)
    if cached is not None:
        return cached
    cols = table_of_marks(lattice).scaled_inverse_columns()
    n = lattice.group.order
    acc = [sum(col[i] for col in cols) for i in range(r)]
    found = [0]  # the identity G/G
    signs = 0
    for i in range(1, 1 << r):
        j = (i & -i).bit_length() - 1
        signs ^= 1 << j
        delta = -2 if (signs >> j) & 1 else 2
        col = cols[j]
        for k in range(r):
            acc[k] += delta * col[k]
        if all(v % n == 0 for v in acc):
            found.append(signs)
    group = UnitGroup(lattice, found)
    if group.order != len(found):
        raise AssertionError("unit count is not a power of two")
    _BRUTE_CACHE[lattice] = group
    return group


# -- canonical faithful generators --------------------------------------------------


def upsilon(group: Group) -> UnitElement:
    """The faithful unit generator of the groups that carry one.

    Trivial group: -P/P.  Order 2: P/P - P/1.  Dihedral of order >= 16:
    P/P + P/1 - P/I - P/J with I, J the two classes of non-central
    involutions; its marks are -1 exactly on those two classes.
    """
    tag = classify_type(group)
    lat = lattice_of(group)
    if tag.kind == "trivial":
        return UnitElement.from_element(-1 * identity_element(lat))
    if tag.kind == "cyclic" and tag.order == 2:
        a = identity_element(lat) - transitive_element(lat, lat.trivial())
        return UnitElement.from_element(a)
    if tag.kind == "dihedral" and tag.order >= 16:
        zmask = center(group).mask
        noncentral = [ci for ci in range(lat.num_classes)
                      if lat.rep(ci).order == 2 and lat.rep(ci).mask & zmask == 1]
        if len(noncentral) != 2:
            raise AssertionError(
                "dihedral group without exactly two non-central involution classes")
        i_cl, j_cl = noncentral
        a = identity_element(lat) + transitive_element(lat, lat.trivial()) \
            - transitive_element(lat, lat.rep(i_cl)) \
            - transitive_element(lat, lat.rep(j_cl))
        unit = UnitElement.from_element(a)
        if unit.signs != (1 << i_cl) | (1 << j_cl):
            raise AssertionError("faithful dihedral unit has unexpected marks")
        return unit
    raise GroupError(f"no canonical faithful unit for type {tag.label}")


def type_qualifies(tag: TypeTag) -> bool:
    """Section types that contribute a basis unit: trivial, C2, dihedral."""
    if tag.kind == "trivial":
        return True
    if tag.kind == "cyclic" and tag.order == 2:
        return True
    if tag.kind == "dihedral":
        if tag.order < 16:
            raise AssertionError("dihedral(8) cannot appear as a section type")
        return True
    return False


def teninf_generator(group: Group, q: Subgroup) -> UnitElement:
    """Tensor-induce the canonical faithful unit of N_P(Q)/Q up to P.

    The carrier biset is induction composed with inflation through the
    section (N_P(Q), Q); transport along it is multiplicative, which is
    exactly tensor induction on units.
    """
    n = normalizer(group, q)
    biset = indinf_biset(group, Section(n, q))
    return transport_unit(biset, upsilon(biset.right_group))


def units_via_genetic_basis(group: Group,
                            gb: GeneticBasis | None = None) -> UnitGroup:
    """The unit group from a genetic basis.

    For odd p-groups the answer is {+-P/P} outright.  For 2-groups, one
    generator per basis entry whose type qualifies; the transported
    generators must stay F2-independent.
    """
    lat = lattice_of(group)
    p = prime_of(group)
    if p is not None and p != 2:
        return UnitGroup.from_units(lat, [minus_identity(lat)])
    if gb is None:
        gb = genetic_basis(group)
    gens = [teninf_generator(group, e.subgroup)
            for e in gb.entries if type_qualifies(e.type_tag)]
    result = UnitGroup.from_units(lat, gens)
    if result.rank != len(gens):
        raise AssertionError(
            f"genetic generators of {group.name} are F2-dependent")
    return result


# -- the sign embedding and the exponential map ---------------------------------------


def epsilon_embed(a: UnitElement) -> int:
    """Sign vector of a unit as an F2 bitmask (bit i = class i mark is -1)."""
    return a.signs


_TRIVIAL_GROUP: Group | None = None


def _trivial_group() -> Group:
    global _TRIVIAL_GROUP
    if _TRIVIAL_GROUP is None:
        _TRIVIAL_GROUP = build_family("cyclic", 1)
    return _TRIVIAL_GROUP


def _coset_biset(group: Group, k: Subgroup) -> Biset:
    """The G-set G/K viewed as a (G, 1)-biset."""
    cosets, coset_of = _cosets(group, k)
    size = len(cosets)
    left = [[coset_of[group.mul(x, cosets[c])] for c in range(size)]
            for x in range(group.order)]
    right = [[c] for c in range(size)]
    return Biset(group, _trivial_group(), left, right,
                 name=f"{group.name}/{k.order}")


def _cosets(group: Group, k: Subgroup) -> tuple[list[int], list[int]]:
    """Left cosets of K: representative list and element -> coset index."""
    coset_of = [-1] * group.order
    reps: list[int] = []
    for x in range(group.order):
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for h in k.members():
            coset_of[group.mul(x, h)] = c
    return reps, coset_of


def _orbit_count(group: Group, t: Subgroup, k: Subgroup) -> int:
    """Number of T-orbits on the coset space G/K."""
    reps, coset_of = _cosets(group, k)
    size = len(reps)
    seen = bytearray(size)
    tmem = t.members()
    count = 0
    for c in range(size):
        if seen[c]:
            continue
        count += 1
        stack = [c]
        seen[c] = 1
        while stack:
            d = stack.pop()
            for h in tmem:
                e = coset_of[group.mul(h, reps[d])]
                if not seen[e]:
                    seen[e] = 1
                    stack.append(e)
    return count


def exp_element(lattice: SubgroupLattice, x: BurnsideElement) -> UnitElement:
    """Exponential of a Burnside element: the unit (-1) raised to x.

    The mark at T flips once per T-orbit of each copy of G/K in x, so it
    equals (-1) to the parity of sum_K x_K |T\\(G/K)|.  The same unit is
    recomputed by transporting -1 along x viewed as a virtual (G, 1)-biset
    and the two answers are required to agree.
    """
    if x.lattice is not lattice:
        raise ValueError("element belongs to a different lattice")
    group = lattice.group
    signs = 0
    for ti in range(lattice.num_classes):
        t = lattice.rep(ti)
        parity = 0
        for ki in range(lattice.num_classes):
            if x.coeffs[ki] & 1:
                parity ^= _orbit_count(group, t, lattice.rep(ki)) & 1
        if parity:
            signs |= 1 << ti
    direct = UnitElement.from_signs(lattice, signs)

    terms = tuple((x.coeffs[ki], _coset_biset(group, lattice.rep(ki)))
                  for ki in range(lattice.num_classes) if x.coeffs[ki])
    virt = VirtualBiset(group, _trivial_group(), terms)
    point_lat = lattice_of(_trivial_group())
    via_biset = transport_virtual(virt, minus_identity(point_lat))
    if via_biset != direct:
        raise AssertionError("exponential disagrees with biset transport")
    return direct


def exp_image(lattice: SubgroupLattice) -> UnitGroup:
    """Image of the exponential map: spanned by the images of the
    canonical basis, since exp turns sums into products."""
    gens = [exp_element(lattice, transitive_element(lattice, lattice.rep(ki)))
            for ki in range(lattice.num_classes)]
    return UnitGroup.from_units(lattice, gens)


# -- the rank cross-check ---------------------------------------------------------------


@dataclass(frozen=True)
class RankCheck:
    """Three independently computed ranks of the unit group plus
    both-direction span containment."""

    group_name: str
    brute_rank: int
    genetic_rank: int
    formula_rank: int
    brute_contains_genetic: bool
    genetic_contains_brute: bool

    @property
    def ranks_equal(self) -> bool:
        return self.brute_rank == self.genetic_rank == self.formula_rank

    @property
    def passed(self) -> bool:
        return (self.ranks_equal and self.brute_contains_genetic
                and self.genetic_contains_brute)


def verify_rank_theorem(group: Group, budget: int | None = None) -> RankCheck:
    lat = lattice_of(group)
    brute = enumerate_units_bruteforce(lat, budget=budget)
    gb = genetic_basis(group)
    constructed = units_via_genetic_basis(group, gb)
    p = prime_of(group)
    if p is not None and p != 2:
        formula = 1
    else:
        formula = sum(1 for e in gb.entries if type_qualifies(e.type_tag))
    return RankCheck(
        group_name=group.name,
        brute_rank=brute.rank,
        genetic_rank=constructed.rank,
        formula_rank=formula,
        brute_contains_genetic=brute.contains_group(constructed),
        genetic_contains_brute=constructed.contains_group(brute),
    )
