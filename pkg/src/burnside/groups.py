"""Small finite groups as explicit multiplication tables.

Elements are the integers 0..order-1 and the identity is always element 0.
Groups are immutable once built; subgroups are element bitmasks over the
parent group.  Everything here is exact and brute force by design: the
orders in play are at most 64 (128 for direct products), where a closed
table beats any clever representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

ASSOCIATIVITY_CHECK_LIMIT = 64
DEFAULT_ORDER_CAP = 128


class GroupError(ValueError):
    """Invalid group data or an unsupported group-building request."""


class Group:
    """A finite group given by its full multiplication table.

    The table must have the identity at index 0.  Associativity, identity
    and inverses are verified at construction for orders up to
    ``ASSOCIATIVITY_CHECK_LIMIT``.  Equality and hashing are structural
    (same order, same table), so independently built copies of the same
    labelled group compare equal.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G",
                 validate: bool = True) -> None:
        order = len(table)
        if order == 0:
            raise GroupError("group must have at least the identity element")
        rows = []
        for i, row in enumerate(table):
            if len(row) != order:
                raise GroupError(f"row {i} has length {len(row)}, expected {order}")
            norm = tuple(int(x) for x in row)
            for x in norm:
                if not 0 <= x < order:
                    raise GroupError(f"table entry {x} out of range 0..{order - 1}")
            rows.append(norm)
        self.order = order
        self.name = str(name)
        self._table = tuple(rows)
        if validate:
            self._check_identity()
        self._inv = self._compute_inverses()
        if validate and order <= ASSOCIATIVITY_CHECK_LIMIT:
            self._check_associativity()
        self._hash: int | None = None
        self._element_orders: tuple[int, ...] | None = None
        self._abelian: bool | None = None

    # -- construction checks ------------------------------------------------

    def _check_identity(self) -> None:
        for x in range(self.order):
            if self._table[0][x] != x or self._table[x][0] != x:
                raise GroupError("element 0 is not a two-sided identity")

    def _compute_inverses(self) -> tuple[int, ...]:
        inv = [-1] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self._table[a][b] == 0 and self._table[b][a] == 0:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise GroupError(f"element {a} has no two-sided inverse")
        return tuple(inv)

    def _check_associativity(self) -> None:
        t = self._table
        n = self.order
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError(
                            f"associativity fails on ({a},{b},{c})")

    # -- core operations ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, x: int) -> int:
        """Conjugate a^x = x^-1 a x."""
        t = self._table
        return t[t[self._inv[x]][a]][x]

    @property
    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        orders = self._orders()
        return orders[a]

    def _orders(self) -> tuple[int, ...]:
        if self._element_orders is None:
            out = []
            for a in range(self.order):
                x, n = a, 1
                while x != 0:
                    x = self._table[x][a]
                    n += 1
                out.append(n)
            self._element_orders = tuple(out)
        return self._element_orders

    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self._table
            self._abelian = all(
                t[a][b] == t[b][a]
                for a in range(self.order) for b in range(a + 1, self.order))
        return self._abelian

    def is_cyclic(self) -> bool:
        return self.order in self._orders()

    def involution_count(self) -> int:
        return sum(1 for o in self._orders() if o == 2)

    def table_rows(self) -> tuple[tuple[int, ...], ...]:
        return self._table

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Group):
            return NotImplemented
        return self.order == other.order and self._table == other._table

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._table)
        return self._hash

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``group`` stored as an element bitmask."""

    group: Group
    mask: int

    def __post_init__(self) -> None:
        if not self.mask & 1:
            raise GroupError("subgroup must contain the identity (bit 0)")
        if self.mask >> self.group.order:
            raise GroupError("subgroup mask has bits outside the group")
        members = self.members()
        mul = self.group.mul
        for a in members:
            if not (self.mask >> self.group.inv(a)) & 1:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in members:
                if not (self.mask >> mul(a, b)) & 1:
                    raise GroupError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def members(self) -> list[int]:
        m, out = self.mask, []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def contains(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.mask & ~self.mask == 0

    def is_whole_group(self) -> bool:
        return self.order == self.group.order

    def is_trivial(self) -> bool:
        return self.mask == 1

    def __repr__(self) -> str:
        return f"Subgroup({self.group.name}, order={self.order}, mask={self.mask:#x})"


@dataclass(frozen=True)
class Section:
    """A pair of subgroups (top, bottom) with bottom normal in top."""

    top: Subgroup
    bottom: Subgroup

    def __post_init__(self) -> None:
        if self.top.group is not self.bottom.group \
                and self.top.group != self.bottom.group:
            raise GroupError("section subgroups come from different groups")
        if not self.top.contains_subgroup(self.bottom):
            raise GroupError("section bottom is not contained in top")
        g = self.top.group
        for x in self.top.members():
            if conjugate_subgroup(self.bottom, x).mask != self.bottom.mask:
                raise GroupError("section bottom is not normal in top")


@dataclass(frozen=True)
class TypeTag:
    """Recognized isomorphism type of a small group.

    ``kind`` is one of trivial, cyclic, klein, dihedral, quaternion,
    semidihedral, elementary_abelian, other.  ``rank`` is set only for
    elementary abelian groups.
    """

    kind: str
    order: int
    rank: int | None = None

    @property
    def label(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "elementary_abelian":
            return f"elementary_abelian(p^{self.rank}={self.order})"
        if self.kind == "other":
            return f"other({self.order})"
        return f"{self.kind}({self.order})"


# -- subgroup helpers --------------------------------------------------------


def subgroup(group: Group, elements: Iterable[int]) -> Subgroup:
    """Subgroup with exactly the given members (validated)."""
    mask = 0
    for x in elements:
        mask |= 1 << x
    return Subgroup(group, mask | 1)


def generated_subgroup(group: Group, generators: Iterable[int]) -> Subgroup:
    """Subgroup generated by the given elements (closure by products)."""
    mask = 1
    work = [0]
    for g in generators:
        if not (mask >> g) & 1:
            mask |= 1 << g
            work.append(g)
    mul = group.mul
    i = 0
    members = work
    while i < len(members):
        a = members[i]
        i += 1
        for b in list(members):
            for c in (mul(a, b), mul(b, a)):
                if not (mask >> c) & 1:
                    mask |= 1 << c
                    members.append(c)
    return Subgroup(group, mask)


def cyclic_subgroup(group: Group, x: int) -> Subgroup:
    mask, y = 1, x
    while y != 0:
        mask |= 1 << y
        y = group.mul(y, x)
    return Subgroup(group, mask)


def trivial_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, 1)


def full_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, (1 << group.order) - 1)


def conjugate_subgroup(h: Subgroup, x: int) -> Subgroup:
    """The conjugate H^x = x^-1 H x."""
    g = h.group
    mask = 0
    for a in h.members():
        mask |= 1 << g.conj(a, x)
    return Subgroup(g, mask)


def center(group: Group) -> Subgroup:
    mul = group.mul
    mask = 0
    for a in range(group.order):
        if all(mul(a, b) == mul(b, a) for b in range(group.order)):
            mask |= 1 << a
    return Subgroup(group, mask)


def centralizer(group: Group, elements: Iterable[int]) -> Subgroup:
    elems = list(elements)
    mul = group.mul
    mask = 0
    for x in range(group.order):
        if all(mul(x, a) == mul(a, x) for a in elems):
            mask |= 1 << x
    return Subgroup(group, mask)


def normalizer(group: Group, h: Subgroup) -> Subgroup:
    mask = 0
    for x in range(group.order):
        if conjugate_subgroup(h, x).mask == h.mask:
            mask |= 1 << x
    return Subgroup(group, mask)


def is_normal(group: Group, h: Subgroup) -> bool:
    return normalizer(group, h).order == group.order


# -- quotients and sections ---------------------------------------------------


def quotient(group: Group, n: Subgroup) -> tuple[Group, tuple[int, ...]]:
    """Quotient G/N as a fresh group plus the projection map.

    Cosets are numbered in order of their smallest member, which puts the
    coset of the identity at index 0.  The same (group, subgroup) pair
    always yields the same labelling, so independently built quotients of
    equal groups are equal.
    """
    if not is_normal(group, n):
        raise GroupError("quotient requires a normal subgroup")
    proj = [-1] * group.order
    reps: list[int] = []
    for x in range(group.order):
        if proj[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for h in n.members():
            proj[group.mul(x, h)] = k
    q = len(reps)
    table = [[proj[group.mul(reps[i], reps[j])] for j in range(q)]
             for i in range(q)]
    qname = f"{group.name}/N{n.order}"
    return Group(table, name=qname), tuple(proj)


def as_group(h: Subgroup) -> tuple[Group, tuple[int, ...]]:
    """A subgroup as a standalone group plus its element embedding.

    ``embedding[i]`` is the parent element behind element ``i``; the
    identity stays at 0 because masks list members in increasing order.
    """
    elems = h.members()
    index = {x: i for i, x in enumerate(elems)}
    parent = h.group
    table = [[index[parent.mul(a, b)] for b in elems] for a in elems]
    return Group(table, name=f"{parent.name}|{h.order}"), tuple(elems)


def section_quotient(section: Section) -> tuple[Group, tuple[int, ...], tuple[int, ...]]:
    """The group T/S of a section with the embedding of T and projection."""
    tgroup, embed = as_group(section.top)
    inner_mask = 0
    for i, x in enumerate(embed):
        if section.bottom.contains(x):
            inner_mask |= 1 << i
    qgroup, proj = quotient(tgroup, Subgroup(tgroup, inner_mask))
    return qgroup, embed, proj


def section_group(section: Section) -> Group:
    return section_quotient(section)[0]


# -- builders -----------------------------------------------------------------


def _cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _dihedral_table(order: int) -> list[list[int]]:
    # elements: r^i -> i, r^i s -> m + i with s r s = r^-1
    m = order // 2
    table = [[0] * order for _ in range(order)]
    for a in range(m):
        for b in range(m):
            table[a][b] = (a + b) % m
            table[a][m + b] = m + (a + b) % m
            table[m + a][b] = m + (a - b) % m
            table[m + a][m + b] = (a - b) % m
    return table


def _quaternion_table(order: int) -> list[list[int]]:
    # elements: a^i -> i (a of order 2m), a^i b -> 2m + i
    # relations: b^2 = a^m, b a b^-1 = a^-1
    m = order // 4
    n = 2 * m
    table = [[0] * order for _ in range(order)]
    for a in range(n):
        for b in range(n):
            table[a][b] = (a + b) % n
            table[a][n + b] = n + (a + b) % n
            table[n + a][b] = n + (a - b) % n
            table[n + a][n + b] = (a - b + m) % n
    return table


def _semidihedral_table(order: int) -> list[list[int]]:
    # elements: r^i -> i, r^i s -> m + i with s r s = r^(m//2 - 1)
    m = order // 2
    t = m // 2 - 1
    table = [[0] * order for _ in range(order)]
    for a in range(m):
        for b in range(m):
            table[a][b] = (a + b) % m
            table[a][m + b] = m + (a + b) % m
            table[m + a][b] = m + (a + t * b) % m
            table[m + a][m + b] = (a + t * b) % m
    return table


def _prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p^k and k >= 1, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return (n, 1)
    k, m = 0, n
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def prime_of(group: Group) -> int | None:
    """The prime p when |G| = p^k (k >= 1); None for the trivial group.

    Raises GroupError when the order is not a prime power.
    """
    if group.order == 1:
        return None
    pk = _prime_power(group.order)
    if pk is None:
        raise GroupError(f"order {group.order} is not a prime power")
    return pk[0]


def build_family(kind: str, order: int) -> Group:
    """Standard groups by family name: cyclic, dihedral, quaternion,
    semidihedral, elementary-abelian."""
    key = kind.strip().lower().replace("-", "_")
    if key == "cyclic":
        if order < 1:
            raise GroupError(f"cyclic order must be >= 1, got {order}")
        return Group(_cyclic_table(order), name=f"C{order}")
    if key == "dihedral":
        pk = _prime_power(order)
        if order < 8 or pk is None or pk[0] != 2:
            raise GroupError(f"dihedral groups need order 2^n >= 8, got {order}")
        return Group(_dihedral_table(order), name=f"D{order}")
    if key == "quaternion":
        pk = _prime_power(order)
        if order < 8 or pk is None or pk[0] != 2:
            raise GroupError(f"quaternion groups need order 2^n >= 8, got {order}")
        return Group(_quaternion_table(order), name=f"Q{order}")
    if key == "semidihedral":
        pk = _prime_power(order)
        if order < 16 or pk is None or pk[0] != 2:
            raise GroupError(f"semidihedral groups need order 2^n >= 16, got {order}")
        return Group(_semidihedral_table(order), name=f"SD{order}")
    if key == "elementary_abelian":
        pk = _prime_power(order)
        if pk is None:
            raise GroupError(f"elementary abelian groups need prime power order, got {order}")
        p, k = pk
        g = Group(_cyclic_table(p), name=f"C{p}")
        out = g
        for _ in range(k - 1):
            out = direct_product(out, g)
        out.name = f"E{order}"
        return out
    raise GroupError(f"unsupported family {kind!r}")


def direct_product(a: Group, b: Group, name: str | None = None,
                   cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Direct product with elements packed as i*|B| + j."""
    order = a.order * b.order
    if order > cap:
        raise GroupError(f"product order {order} exceeds cap {cap}")
    nb = b.order
    table = [[0] * order for _ in range(order)]
    for a1 in range(a.order):
        for b1 in range(nb):
            x = a1 * nb + b1
            for a2 in range(a.order):
                arow = a.mul(a1, a2) * nb
                for b2 in range(nb):
                    table[x][a2 * nb + b2] = arow + b.mul(b1, b2)
    return Group(table, name=name or f"{a.name}x{b.name}")


def group_from_cayley(table: Sequence[Sequence[int]], name: str = "G") -> Group:
    """Group from an explicit Cayley table; identity must sit at index 0."""
    return Group(table, name=name, validate=True)


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                            name: str = "G", cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Close permutation generators of {0..degree-1} into a table group.

    Elements are relabelled so the identity permutation is element 0; the
    rest follow in lexicographic order of their permutation tuples.
    """
    gens = []
    for g in generators:
        perm = tuple(int(x) for x in g)
        if sorted(perm) != list(range(degree)):
            raise GroupError(f"not a permutation of 0..{degree - 1}: {g}")
        gens.append(perm)
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    if len(seen) >= cap:
                        raise GroupError(f"generated group exceeds cap {cap}")
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = [ident] + sorted(seen - {ident})
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i][j] = index[tuple(p[q[k]] for k in range(degree))]
    return Group(table, name=name)


# -- type recognition ----------------------------------------------------------


def classify_type(group: Group) -> TypeTag:
    """Invariant-based recognition of the families that matter here.

    Uses order, cyclicity and the count of order-2 elements, which pin down
    the groups of normal 2-rank 1 plus klein / elementary abelian; anything
    unrecognized is reported as "other", never guessed.
    """
    n = group.order
    if n == 1:
        return TypeTag("trivial", 1)
    if group.is_cyclic():
        return TypeTag("cyclic", n)
    if n == 4:
        return TypeTag("klein", 4)
    pk = _prime_power(n)
    if pk is not None and group.is_abelian():
        p, k = pk
        if all(group.element_order(x) == p for x in range(1, n)):
            return TypeTag("elementary_abelian", n, rank=k)
    if pk is not None and pk[0] == 2 and n >= 8 and not group.is_abelian():
        inv = group.involution_count()
        if inv == n // 2 + 1:
            return TypeTag("dihedral", n)
        if inv == 1:
            return TypeTag("quaternion", n)
        if n >= 16 and inv == n // 4 + 1:
            return TypeTag("semidihedral", n)
    return TypeTag("other", n)
