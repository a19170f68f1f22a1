"""Concrete bisets and the multiplicative transport of Burnside units.

An (H, G)-biset is a finite point set with a left H-action and a
commuting right G-action, stored as explicit action tables.  Units of
B(G) move along a biset U through the mark-product rule: the mark of the
transported unit at T is the product of the original marks at the
stabilizer-like subgroups T^u, one factor per (T, G)-orbit of U.  That
single rule yields restriction, deflation-as-fixed-points and tensor
induction uniformly, with no special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import (
    Group,
    Section,
    Subgroup,
    as_group,
    conjugate_subgroup,
    direct_product,
    quotient,
)
from .lattice import lattice_of, omega1_center
from .ring import NotIntegralError, UnitElement, UnitGroup


class BisetError(ValueError):
    """Malformed biset data or mismatched groups."""


class Biset:
    """An (H, G)-biset: ``left[h][x]`` and ``right[x][g]`` give the actions."""

    __slots__ = ("left_group", "right_group", "size", "left", "right", "name")

    def __init__(self, left_group: Group, right_group: Group,
                 left: Sequence[Sequence[int]], right: Sequence[Sequence[int]],
                 name: str = "U", validate: bool = True) -> None:
        self.left_group = left_group
        self.right_group = right_group
        self.left = tuple(tuple(row) for row in left)
        self.right = tuple(tuple(row) for row in right)
        self.size = len(self.right)
        self.name = name
        if validate:
            self._validate()

    def _validate(self) -> None:
        h, g, n = self.left_group, self.right_group, self.size
        if len(self.left) != h.order:
            raise BisetError("left action table has wrong number of rows")
        if any(len(row) != n for row in self.left):
            raise BisetError("left action rows must cover every point")
        if any(len(row) != g.order for row in self.right):
            raise BisetError("right action rows must cover the right group")
        for x in range(n):
            if self.left[0][x] != x or self.right[x][0] != x:
                raise BisetError("identity must act trivially")
        for a in range(h.order):
            for b in range(h.order):
                ab = h.mul(a, b)
                for x in range(n):
                    if self.left[ab][x] != self.left[a][self.left[b][x]]:
                        raise BisetError("left action is not a group action")
        for a in range(g.order):
            for b in range(g.order):
                ab = g.mul(a, b)
                for x in range(n):
                    if self.right[x][ab] != self.right[self.right[x][a]][b]:
                        raise BisetError("right action is not a group action")
        for a in range(h.order):
            for x in range(n):
                lx = self.left[a][x]
                for b in range(g.order):
                    if self.right[lx][b] != self.left[a][self.right[x][b]]:
                        raise BisetError("left and right actions do not commute")

    def __repr__(self) -> str:
        return (f"Biset({self.name}: ({self.left_group.name},"
                f"{self.right_group.name}), {self.size} points)")


# -- elementary bisets ---------------------------------------------------------


def identity_biset(group: Group) -> Biset:
    rows = group.table_rows()
    return Biset(group, group, rows, rows, name=f"Id_{group.name}")


def induction_biset(group: Group, h: Subgroup) -> Biset:
    """Ind from H to G: the set G with left G- and right H-multiplication.

    The right group is H realized as a standalone group (deterministic
    relabelling), so equal subgroups always produce equal right groups.
    """
    hgroup, embed = as_group(h)
    n = group.order
    left = group.table_rows()
    right = [[group.mul(x, embed[i]) for i in range(hgroup.order)]
             for x in range(n)]
    return Biset(group, hgroup, left, right,
                 name=f"Ind^{group.name}_{h.order}")


def restriction_biset(group: Group, h: Subgroup) -> Biset:
    """Res from G to H: the set G with left H- and right G-multiplication."""
    hgroup, embed = as_group(h)
    n = group.order
    left = [[group.mul(embed[i], x) for x in range(n)]
            for i in range(hgroup.order)]
    right = group.table_rows()
    return Biset(hgroup, group, left, right,
                 name=f"Res^{group.name}_{h.order}")


def inflation_biset(group: Group, n: Subgroup) -> Biset:
    """Inf from G/N to G: the set G/N, left G by projection, right G/N."""
    qgroup, proj = quotient(group, n)
    left = [[qgroup.mul(proj[x], c) for c in range(qgroup.order)]
            for x in range(group.order)]
    right = qgroup.table_rows()
    return Biset(group, qgroup, left, right,
                 name=f"Inf^{group.name}_{qgroup.name}")


def deflation_biset(group: Group, n: Subgroup) -> Biset:
    """Def from G to G/N: the set G/N, left G/N, right G by projection."""
    qgroup, proj = quotient(group, n)
    left = qgroup.table_rows()
    right = [[qgroup.mul(c, proj[x]) for x in range(group.order)]
             for c in range(qgroup.order)]
    return Biset(qgroup, group, left, right,
                 name=f"Def^{group.name}_{qgroup.name}")


def iso_biset(source: Group, target: Group, mapping: Sequence[int]) -> Biset:
    """Transport along a group isomorphism: the set ``target`` as a
    (target, source)-biset."""
    phi = tuple(int(x) for x in mapping)
    if sorted(phi) != list(range(source.order)) or target.order != source.order:
        raise BisetError("mapping is not a bijection onto the target group")
    for a in range(source.order):
        for b in range(source.order):
            if phi[source.mul(a, b)] != target.mul(phi[a], phi[b]):
                raise BisetError("mapping is not a group homomorphism")
    left = target.table_rows()
    right = [[target.mul(p, phi[x]) for x in range(source.order)]
             for p in range(target.order)]
    return Biset(target, source, left, right,
                 name=f"Iso_{source.name}->{target.name}")


def indinf_biset(group: Group, section: Section) -> Biset:
    """Ind then Inf through a section (T, S): a (G, T/S)-biset."""
    tgroup, embed = as_group(section.top)
    inner = _translate_into(section.bottom, embed, tgroup)
    return compose(induction_biset(group, section.top),
                   inflation_biset(tgroup, inner))


def defres_biset(group: Group, section: Section) -> Biset:
    """Res then Def through a section (T, S): a (T/S, G)-biset."""
    tgroup, embed = as_group(section.top)
    inner = _translate_into(section.bottom, embed, tgroup)
    return compose(deflation_biset(tgroup, inner),
                   restriction_biset(group, section.top))


def _translate_into(sub: Subgroup, embed: tuple[int, ...], tgroup: Group) -> Subgroup:
    mask = 0
    for i, x in enumerate(embed):
        if sub.contains(x):
            mask |= 1 << i
    return Subgroup(tgroup, mask)


@dataclass(frozen=True)
class ElementarySpec:
    """Defining data for one elementary biset.

    tag: ind | res | inf | def | iso | indinf | defres | ten | teninf.
    ten/teninf share the underlying set with ind/indinf; the tensor
    behaviour comes from the multiplicative transport, not the biset.
    """

    tag: str
    group: Group
    subgroup: Subgroup | None = None
    section: Section | None = None
    target: Group | None = None
    mapping: tuple[int, ...] | None = None


def elementary(spec: ElementarySpec) -> Biset:
    tag = spec.tag.lower()
    if tag in ("ind", "ten"):
        if spec.subgroup is None:
            raise BisetError(f"{tag} needs a subgroup")
        return induction_biset(spec.group, spec.subgroup)
    if tag == "res":
        if spec.subgroup is None:
            raise BisetError("res needs a subgroup")
        return restriction_biset(spec.group, spec.subgroup)
    if tag == "inf":
        if spec.subgroup is None:
            raise BisetError("inf needs a normal subgroup")
        return inflation_biset(spec.group, spec.subgroup)
    if tag == "def":
        if spec.subgroup is None:
            raise BisetError("def needs a normal subgroup")
        return deflation_biset(spec.group, spec.subgroup)
    if tag == "iso":
        if spec.target is None or spec.mapping is None:
            raise BisetError("iso needs a target group and a mapping")
        return iso_biset(spec.group, spec.target, spec.mapping)
    if tag in ("indinf", "teninf"):
        if spec.section is None:
            raise BisetError(f"{tag} needs a section")
        return indinf_biset(spec.group, spec.section)
    if tag == "defres":
        if spec.section is None:
            raise BisetError("defres needs a section")
        return defres_biset(spec.group, spec.section)
    raise BisetError(f"unknown elementary biset tag {spec.tag!r}")


# -- opposite and composition ----------------------------------------------------


def opposite(u: Biset) -> Biset:
    """Swap the actions through inverses: g.x.h (op) = h^-1 x g^-1."""
    h, g = u.left_group, u.right_group
    left = [[u.right[x][g.inv(a)] for x in range(u.size)]
            for a in range(g.order)]
    right = [[u.left[h.inv(b)][x] for b in range(h.order)]
             for x in range(u.size)]
    return Biset(g, h, left, right, name=f"op({u.name})")


def compose(v: Biset, u: Biset) -> Biset:
    """The composite V x_H U of a (K, H)- and an (H, G)-biset.

    Points are pairs (v, u) modulo (v.h, u) ~ (v, h.u); class labels follow
    the smallest pair index, so composition is deterministic.
    """
    if v.right_group != u.left_group:
        raise BisetError(
            f"cannot compose: middle groups differ ({v.right_group.name} vs "
            f"{u.left_group.name})")
    h = u.left_group
    nv, nu = v.size, u.size
    parent = list(range(nv * nu))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry

    for i in range(nv):
        for a in range(1, h.order):
            ia = v.right[i][a] * nu
            ibase = i * nu
            lrow = u.left[a]
            for j in range(nu):
                union(ia + j, ibase + lrow[j])

    roots = sorted({find(x) for x in range(nv * nu)})
    label = {r: c for c, r in enumerate(roots)}
    size = len(roots)
    k, g = v.left_group, u.right_group
    left = [[0] * size for _ in range(k.order)]
    for a in range(k.order):
        for r in roots:
            i, j = divmod(r, nu)
            left[a][label[r]] = label[find(v.left[a][i] * nu + j)]
    right = [[0] * g.order for _ in range(size)]
    for r in roots:
        i, j = divmod(r, nu)
        row = right[label[r]]
        for b in range(g.order):
            row[b] = label[find(i * nu + u.right[j][b])]
    return Biset(k, g, left, right, name=f"{v.name}*{u.name}")


# -- orbits, stabilizers, isomorphism ---------------------------------------------


def double_cosets(t: Subgroup, u: Biset) -> list[tuple[int, Subgroup]]:
    """(T, G)-orbit representatives on U with their subgroups T^u of G.

    T must be a subgroup of the left group.  T^u = {g : t.u = u.g for some
    t in T}; the representative is the smallest point of each orbit.
    """
    if t.group != u.left_group:
        raise BisetError("T must be a subgroup of the left group")
    g = u.right_group
    tmem = t.members()
    visited = bytearray(u.size)
    out: list[tuple[int, Subgroup]] = []
    for p in range(u.size):
        if visited[p]:
            continue
        visited[p] = 1
        stack = [p]
        while stack:
            q = stack.pop()
            for a in tmem:
                r = u.left[a][q]
                if not visited[r]:
                    visited[r] = 1
                    stack.append(r)
            for b in range(g.order):
                r = u.right[q][b]
                if not visited[r]:
                    visited[r] = 1
                    stack.append(r)
        lefts = {u.left[a][p] for a in tmem}
        mask = 0
        for b in range(g.order):
            if u.right[p][b] in lefts:
                mask |= 1 << b
        out.append((p, Subgroup(g, mask)))
    return out


def biset_isomorphic(u: Biset, v: Biset) -> bool:
    """Isomorphism test via orbit sizes and point-stabilizer conjugacy.

    Bisets decompose into transitive pieces (H x G)/stab, and transitive
    bisets are isomorphic exactly when their stabilizers are conjugate in
    H x G, so matching orbits pairwise is a complete test.
    """
    if u.left_group != v.left_group or u.right_group != v.right_group:
        return False
    if u.size != v.size:
        return False
    prod = direct_product(u.left_group, u.right_group,
                          cap=u.left_group.order * u.right_group.order)
    uorb = _orbit_stabilizers(u, prod)
    vorb = _orbit_stabilizers(v, prod)
    if len(uorb) != len(vorb):
        return False
    remaining = list(vorb)
    for size, stab in uorb:
        for idx, (vsize, vstab) in enumerate(remaining):
            if vsize == size and _conjugate_in(prod, stab, vstab):
                del remaining[idx]
                break
        else:
            return False
    return True


def _orbit_stabilizers(u: Biset, prod: Group) -> list[tuple[int, Subgroup]]:
    h, g = u.left_group, u.right_group
    visited = bytearray(u.size)
    out = []
    for p in range(u.size):
        if visited[p]:
            continue
        orbit = [p]
        visited[p] = 1
        stack = [p]
        while stack:
            q = stack.pop()
            for a in range(h.order):
                r = u.left[a][q]
                if not visited[r]:
                    visited[r] = 1
                    orbit.append(r)
                    stack.append(r)
            for b in range(g.order):
                r = u.right[q][b]
                if not visited[r]:
                    visited[r] = 1
                    orbit.append(r)
                    stack.append(r)
        mask = 0
        for a in range(h.order):
            la = u.left[a][p]
            for b in range(g.order):
                if u.right[p][b] == la:
                    mask |= 1 << (a * g.order + b)
        out.append((len(orbit), Subgroup(prod, mask)))
    return out


def _conjugate_in(group: Group, a: Subgroup, b: Subgroup) -> bool:
    if a.order != b.order:
        return False
    return any(conjugate_subgroup(a, x).mask == b.mask
               for x in range(group.order))


# -- virtual bisets and idempotents ------------------------------------------------


@dataclass(frozen=True)
class VirtualBiset:
    """Integer combination of (H, G)-bisets with a shared group pair."""

    left_group: Group
    right_group: Group
    terms: tuple[tuple[int, Biset], ...]

    def __post_init__(self) -> None:
        for _, u in self.terms:
            if u.left_group != self.left_group or u.right_group != self.right_group:
                raise BisetError("virtual biset mixes group pairs")

    @classmethod
    def of(cls, biset: Biset, weight: int = 1) -> "VirtualBiset":
        return cls(biset.left_group, biset.right_group, ((weight, biset),))


def compose_virtual(v: VirtualBiset, u: VirtualBiset) -> VirtualBiset:
    """Bilinear extension of biset composition."""
    if v.right_group != u.left_group:
        raise BisetError("cannot compose virtual bisets: middle groups differ")
    terms = tuple((cv * cu, compose(bv, bu))
                  for cv, bv in v.terms for cu, bu in u.terms)
    return VirtualBiset(v.left_group, u.right_group, terms)


def e_idempotent(group: Group, n: Subgroup) -> Biset:
    """Inflation composed with deflation along a normal subgroup N.

    As a (G, G)-biset this is the quotient set G/N acting by projected
    multiplication on both sides; its transport projects units onto the
    part inflated from G/N.
    """
    return compose(inflation_biset(group, n), deflation_biset(group, n))


def f_idempotent(group: Group, n: Subgroup) -> VirtualBiset:
    """Orthogonal idempotent above N: Moebius combination of e-idempotents
    over the poset of normal subgroups containing N."""
    lat = lattice_of(group)
    if not lat.is_normal_subgroup(n):
        raise BisetError("f idempotent needs a normal subgroup")
    terms = []
    for m in lat.normal_subgroups():
        if n.mask & ~m.mask:
            continue
        mu = lat.mobius_normal(n, m)
        if mu:
            terms.append((mu, e_idempotent(group, m)))
    return VirtualBiset(group, group, tuple(terms))


def f1_idempotent(group: Group) -> VirtualBiset:
    """The faithful idempotent of a p-group via central order-p subgroups.

    Runs over subgroups N of the central socle with subgroup-poset Moebius
    coefficients mu(1, N); each N is central, hence normal.
    """
    lat = lattice_of(group)
    omega = omega1_center(group)
    terms = []
    for n in lat.subgroups:
        if n.mask & ~omega.mask:
            continue
        mu = lat.mobius(lat.trivial(), n)
        if mu:
            terms.append((mu, e_idempotent(group, n)))
    return VirtualBiset(group, group, tuple(terms))


# -- transport of units --------------------------------------------------------------


def transport_unit(u: Biset, a: UnitElement) -> UnitElement:
    """Move a unit of B(G) along an (H, G)-biset.

    The mark at a class representative T of H is the product over
    (T, G)-orbits of U of the marks of ``a`` at the subgroups T^u.  The
    result is integral with all marks +-1; a failed triangular solve here
    means a genuine bug, so it surfaces as an assertion.
    """
    if a.lattice.group != u.right_group:
        raise BisetError("unit lives over a different group than the biset")
    lat_g = a.lattice
    lat_h = lattice_of(u.left_group)
    signs = 0
    for ci in range(lat_h.num_classes):
        t = lat_h.rep(ci)
        bit = 0
        for _, stab in double_cosets(t, u):
            bit ^= a.sign_at(lat_g.class_index(stab))
        if bit:
            signs |= 1 << ci
    try:
        return UnitElement.from_signs(lat_h, signs)
    except NotIntegralError as exc:
        raise AssertionError(
            f"transport along {u.name} produced a non-integral mark vector") from exc


def transport_virtual(f: VirtualBiset, a: UnitElement) -> UnitElement:
    """Multiplicative extension of transport to integer combinations.

    Negative weights go through the explicit unit inverse even though
    every unit is self-inverse; it keeps the bookkeeping honest.
    """
    from .ring import identity_unit

    result = identity_unit(lattice_of(f.left_group))
    for weight, biset in f.terms:
        moved = transport_unit(biset, a)
        if weight < 0:
            moved = moved.inverse()
        for _ in range(abs(weight)):
            result = result.mul(moved)
    return result


def faithful_part(units: UnitGroup) -> UnitGroup:
    """Units killed by every proper deflation.

    Deflating through a minimal nontrivial normal subgroup suffices:
    larger deflations factor through the minimal ones.
    """
    lat = units.lattice
    group = lat.group
    if group.order == 1:
        return UnitGroup(lat, [u.signs for u in units.basis])
    normals = [s for s in lat.normal_subgroups() if s.order > 1]
    minimal = [n for n in normals
               if not any(m.order > 1 and m.mask != n.mask
                          and m.mask & ~n.mask == 0 for m in normals)]
    deflations = [deflation_biset(group, n) for n in minimal]
    kept = [u for u in units.elements()
            if all(transport_unit(d, u).is_identity() for d in deflations)]
    return UnitGroup.from_units(lat, kept)
