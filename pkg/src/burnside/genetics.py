"""Genetic subgroups of p-groups and their linkage classes.

A subgroup Q of a p-group P is genetic when N_P(Q)/Q has normal p-rank
at most 1 and conjugates of Q meet the relative centre Z_P(Q) inside Q
only when they equal Q.  Linkage classes of genetic subgroups are in
bijection with rational irreducible representations of P; the number of
those is independently available as the number of conjugacy classes of
cyclic subgroups, which serves as the cross-check oracle throughout.

All quantifiers are decided by exhaustive element scans: the orders in
play make that instant and leave no room for heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import (
    Group,
    Section,
    Subgroup,
    TypeTag,
    center,
    classify_type,
    conjugate_subgroup,
    normalizer,
    prime_of,
    section_quotient,
)
from .lattice import lattice_of


class GeneticsError(RuntimeError):
    """A structural guarantee failed (these indicate real bugs)."""


def normal_p_rank(group: Group) -> int:
    """Largest rank of a normal elementary abelian subgroup.

    The trivial group reports 0.  Non-prime-power orders are rejected.
    """
    p = prime_of(group)
    if p is None:
        return 0
    lat = lattice_of(group)
    best = 0
    for i, s in enumerate(lat.subgroups):
        if not lat.normal[i] or s.order == 1:
            continue
        if all(group.element_order(x) == p for x in s.members() if x != 0):
            rank = s.order.bit_length() - 1 if p == 2 else _log(s.order, p)
            best = max(best, rank)
    return best


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


@lru_cache(maxsize=None)
def central_preimage(group: Group, q: Subgroup) -> Subgroup:
    """Z_P(Q): the preimage in N_P(Q) of the centre of N_P(Q)/Q."""
    n = normalizer(group, q)
    qgroup, embed, proj = section_quotient(Section(n, q))
    zq = center(qgroup)
    mask = 0
    for i, x in enumerate(embed):
        if zq.contains(proj[i]):
            mask |= 1 << x
    return Subgroup(group, mask)


@lru_cache(maxsize=None)
def section_type(group: Group, q: Subgroup) -> TypeTag:
    """Recognized type of N_P(Q)/Q."""
    n = normalizer(group, q)
    qgroup, _, _ = section_quotient(Section(n, q))
    return classify_type(qgroup)


@lru_cache(maxsize=None)
def is_genetic(group: Group, q: Subgroup) -> bool:
    """Both genetic conditions, checked over every element of the group."""
    prime_of(group)  # p-group guard
    n = normalizer(group, q)
    qgroup, _, _ = section_quotient(Section(n, q))
    if normal_p_rank(qgroup) > 1:
        return False
    z = central_preimage(group, q)
    for x in range(group.order):
        cq = conjugate_subgroup(q, x)
        meets_inside = cq.mask & z.mask & ~q.mask == 0
        if meets_inside != (cq.mask == q.mask):
            return False
    return True


def linked(group: Group, q: Subgroup, r: Subgroup) -> bool:
    """Linkage of two genetic subgroups.

    Q and R are linked when some conjugate of Q meets Z_P(R) inside R and
    some conjugate of R meets Z_P(Q) inside Q; the two witnesses are
    independent, so each is searched separately.
    """
    for s in (q, r):
        if not is_genetic(group, s):
            raise GeneticsError(f"linkage needs genetic subgroups, got {s!r}")
    return _half_linked(group, q, r) and _half_linked(group, r, q)


def _half_linked(group: Group, q: Subgroup, r: Subgroup) -> bool:
    zr = central_preimage(group, r)
    return any(
        conjugate_subgroup(q, x).mask & zr.mask & ~r.mask == 0
        for x in range(group.order))


@dataclass(frozen=True)
class GeneticEntry:
    """One linkage class: its chosen representative and the section type."""

    subgroup: Subgroup
    section_order: int
    type_tag: TypeTag


@dataclass(frozen=True)
class GeneticBasis:
    group: Group
    entries: tuple[GeneticEntry, ...]
    classes: tuple[tuple[int, ...], ...]  # subgroup masks per linkage class

    def type_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for e in self.entries:
            counts[e.type_tag.label] = counts.get(e.type_tag.label, 0) + 1
        return counts


def genetic_basis(group: Group) -> GeneticBasis:
    """All genetic subgroups, partitioned by linkage, one entry per class.

    Transitivity of the linkage relation and constancy of the section type
    on each class are verified exhaustively; a violation raises rather
    than being silently repaired.
    """
    prime_of(group)  # p-group guard
    lat = lattice_of(group)
    genetic = [s for s in lat.subgroups if is_genetic(group, s)]
    k = len(genetic)
    half = [[_half_linked(group, genetic[i], genetic[j]) for j in range(k)]
            for i in range(k)]
    matrix = [[half[i][j] and half[j][i] for j in range(k)] for i in range(k)]
    for i in range(k):
        if not matrix[i][i]:
            raise GeneticsError("linkage is not reflexive")
        for j in range(k):
            if not matrix[i][j]:
                continue
            for l in range(k):
                if matrix[j][l] and not matrix[i][l]:
                    raise GeneticsError(
                        f"linkage not transitive on {group.name}: "
                        f"{genetic[i].mask:#x} ~ {genetic[j].mask:#x} ~ "
                        f"{genetic[l].mask:#x}")
    assigned = [-1] * k
    classes: list[list[int]] = []
    for i in range(k):
        if assigned[i] >= 0:
            continue
        cid = len(classes)
        members = [j for j in range(k) if matrix[i][j]]
        for j in members:
            assigned[j] = cid
        classes.append(members)
    entries = []
    class_masks = []
    for members in classes:
        subs = [genetic[j] for j in members]
        rep = min(subs, key=lambda s: s.mask)
        tag = section_type(group, rep)
        for s in subs:
            other = section_type(group, s)
            if (other.kind, other.order) != (tag.kind, tag.order):
                raise GeneticsError(
                    f"linked genetic subgroups with different types on "
                    f"{group.name}: {tag.label} vs {other.label}")
        norm_order = normalizer(group, rep).order
        entries.append(GeneticEntry(rep, norm_order // rep.order, tag))
        class_masks.append(tuple(sorted(s.mask for s in subs)))
    order = sorted(range(len(entries)),
                   key=lambda i: (-entries[i].subgroup.order,
                                  entries[i].subgroup.mask))
    return GeneticBasis(
        group,
        tuple(entries[i] for i in order),
        tuple(class_masks[i] for i in order))


def rational_irrep_count(group: Group) -> int:
    """Independent oracle: the number of rational irreducible
    representations equals the number of conjugacy classes of cyclic
    subgroups."""
    lat = lattice_of(group)
    count = 0
    for ci in range(lat.num_classes):
        rep = lat.rep(ci)
        if any(group.element_order(x) == rep.order for x in rep.members()):
            count += 1
    return count
