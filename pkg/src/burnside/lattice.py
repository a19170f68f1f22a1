"""Subgroup lattices: enumeration, conjugacy classes, Moebius functions."""

from __future__ import annotations

from .groups import (
    Group,
    GroupError,
    Subgroup,
    center,
    conjugate_subgroup,
    cyclic_subgroup,
    generated_subgroup,
    prime_of,
)

LATTICE_ORDER_CAP = 64


class SubgroupLattice:
    """All subgroups of a group, with conjugacy classes and Moebius data.

    Subgroups are sorted by (order, mask); conjugacy class representatives
    are the minimal mask in each class and classes inherit the sort order
    of their representatives.  This fixed ordering defines coordinate and
    sign-vector layouts everywhere downstream, so it must never change.
    """

    def __init__(self, group: Group) -> None:
        if group.order > LATTICE_ORDER_CAP:
            raise GroupError(
                f"subgroup lattice capped at order {LATTICE_ORDER_CAP}, "
                f"got {group.order}")
        self.group = group
        masks = _enumerate_masks(group)
        masks.sort(key=lambda m: (m.bit_count(), m))
        self.subgroups: tuple[Subgroup, ...] = tuple(
            Subgroup(group, m) for m in masks)
        self._index = {m: i for i, m in enumerate(masks)}

        # conjugation orbits
        class_of = [-1] * len(masks)
        reps: list[int] = []
        for i, m in enumerate(masks):
            if class_of[i] >= 0:
                continue
            cid = len(reps)
            reps.append(i)
            orbit = {m}
            for x in range(group.order):
                orbit.add(conjugate_subgroup(self.subgroups[i], x).mask)
            for om in orbit:
                class_of[self._index[om]] = cid
        self.class_of: tuple[int, ...] = tuple(class_of)
        self.class_reps: tuple[int, ...] = tuple(reps)
        self.num_classes = len(reps)
        self.normal: tuple[bool, ...] = tuple(
            sum(1 for j, c in enumerate(class_of) if c == class_of[i]) == 1
            for i in range(len(masks)))
        self._mobius: dict[tuple[int, int], int] = {}
        self._mobius_normal: dict[tuple[int, int], int] = {}

    # -- lookups --------------------------------------------------------------

    def index_of(self, h: Subgroup | int) -> int:
        mask = h.mask if isinstance(h, Subgroup) else h
        try:
            return self._index[mask]
        except KeyError:
            raise GroupError(f"mask {mask:#x} is not a subgroup of {self.group.name}")

    def class_index(self, h: Subgroup | int) -> int:
        return self.class_of[self.index_of(h)]

    def rep(self, class_idx: int) -> Subgroup:
        return self.subgroups[self.class_reps[class_idx]]

    def reps(self) -> list[Subgroup]:
        return [self.subgroups[i] for i in self.class_reps]

    def is_normal_subgroup(self, h: Subgroup) -> bool:
        return self.normal[self.index_of(h)]

    def normal_subgroups(self) -> list[Subgroup]:
        return [s for i, s in enumerate(self.subgroups) if self.normal[i]]

    def full(self) -> Subgroup:
        return self.subgroups[-1]

    def trivial(self) -> Subgroup:
        return self.subgroups[0]

    # -- Moebius functions ------------------------------------------------------

    def mobius(self, k: Subgroup, h: Subgroup) -> int:
        """Moebius value of the interval [K, H] in the subgroup poset."""
        ki, hi = self.index_of(k), self.index_of(h)
        if k.mask & ~h.mask:
            raise GroupError("mobius requires K contained in H")
        return self._mobius_rec(ki, hi)

    def _mobius_rec(self, ki: int, hi: int) -> int:
        if ki == hi:
            return 1
        key = (ki, hi)
        val = self._mobius.get(key)
        if val is None:
            kmask = self.subgroups[ki].mask
            hmask = self.subgroups[hi].mask
            total = 0
            for li, s in enumerate(self.subgroups):
                if li != hi and s.mask & ~hmask == 0 and kmask & ~s.mask == 0:
                    total += self._mobius_rec(ki, li)
            val = -total
            self._mobius[key] = val
        return val

    def mobius_normal(self, n: Subgroup, m: Subgroup) -> int:
        """Moebius value of [N, M] in the poset of normal subgroups."""
        ni, mi = self.index_of(n), self.index_of(m)
        if not (self.normal[ni] and self.normal[mi]):
            raise GroupError("mobius_normal requires normal subgroups")
        if n.mask & ~m.mask:
            raise GroupError("mobius_normal requires N contained in M")
        return self._mobius_normal_rec(ni, mi)

    def _mobius_normal_rec(self, ni: int, mi: int) -> int:
        if ni == mi:
            return 1
        key = (ni, mi)
        val = self._mobius_normal.get(key)
        if val is None:
            nmask = self.subgroups[ni].mask
            mmask = self.subgroups[mi].mask
            total = 0
            for li, s in enumerate(self.subgroups):
                if li != mi and self.normal[li] and s.mask & ~mmask == 0 \
                        and nmask & ~s.mask == 0:
                    total += self._mobius_normal_rec(ni, li)
            val = -total
            self._mobius_normal[key] = val
        return val

    def __repr__(self) -> str:
        return (f"SubgroupLattice({self.group.name}, "
                f"{len(self.subgroups)} subgroups, {self.num_classes} classes)")


def _enumerate_masks(group: Group) -> list[int]:
    """All subgroup masks: cyclic seeds closed under pairwise join."""
    seeds = {cyclic_subgroup(group, x).mask for x in range(group.order)}
    seeds.add(1)
    found = set(seeds)
    frontier = list(seeds)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(found):
                j = a | b
                if j in found:
                    continue
                jm = generated_subgroup(
                    group, _mask_members(j)).mask
                if jm not in found:
                    found.add(jm)
                    fresh.append(jm)
        frontier = fresh
    return list(found)


def _mask_members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


_LATTICES: dict[Group, SubgroupLattice] = {}


def lattice_of(group: Group) -> SubgroupLattice:
    """Shared lattice per group; lattices are immutable so caching is safe."""
    lat = _LATTICES.get(group)
    if lat is None:
        lat = SubgroupLattice(group)
        _LATTICES[group] = lat
    return lat


def omega1_center(group: Group) -> Subgroup:
    """Subgroup of central elements of order dividing p, for a p-group."""
    p = prime_of(group)
    if p is None:
        return Subgroup(group, 1)
    z = center(group)
    gens = [x for x in z.members() if group.element_order(x) in (1, p)]
    return generated_subgroup(group, gens)


def fixed_point_free_subgroups(group: Group) -> list[Subgroup]:
    """Class representatives H with H meeting the centre trivially."""
    lat = lattice_of(group)
    zmask = center(group).mask
    return [s for s in lat.reps() if s.mask & zmask == 1]
