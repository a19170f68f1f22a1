"""Burnside ring arithmetic over a fixed subgroup lattice.

Elements live in the canonical basis indexed by conjugacy classes of
subgroups (lattice order).  The mark homomorphism into the ghost ring is
the workhorse: multiplication happens pointwise on marks and is pulled
back through the exact triangular solve.  All rational computation uses
fractions; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import f2
from .groups import Subgroup, conjugate_subgroup
from .lattice import SubgroupLattice


class NotIntegralError(ValueError):
    """A mark vector that does not come from an integral element."""


class TableOfMarks:
    """Square matrix M[H][K] = |(G/K)^H| over class representatives.

    Rows and columns follow lattice class order.  M is upper triangular
    with positive diagonal, since a nonzero entry forces H to be
    subconjugate to K.
    """

    def __init__(self, lattice: SubgroupLattice) -> None:
        self.lattice = lattice
        group = lattice.group
        reps = lattice.reps()
        r = len(reps)
        matrix = [[0] * r for _ in range(r)]
        for kj, ksub in enumerate(reps):
            fixed_counts = _fixed_cosets_per_class(lattice, ksub)
            for hi in range(r):
                matrix[hi][kj] = fixed_counts[hi]
        self.matrix: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in matrix)
        self.size = r
        self._scaled_inverse_columns: tuple[tuple[int, ...], ...] | None = None

    def marks_of(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        m = self.matrix
        r = self.size
        return tuple(
            sum(m[h][k] * coeffs[k] for k in range(r) if coeffs[k])
            for h in range(r))

    def marks_of_rational(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        m = self.matrix
        r = self.size
        return tuple(
            sum((coeffs[k] * m[h][k] for k in range(r) if coeffs[k]),
                start=Fraction(0))
            for h in range(r))

    def solve(self, marks: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        """Exact back substitution of M c = marks (M upper triangular)."""
        m = self.matrix
        r = self.size
        coeffs: list[Fraction] = [Fraction(0)] * r
        for i in range(r - 1, -1, -1):
            acc = Fraction(marks[i])
            row = m[i]
            for j in range(i + 1, r):
                if row[j] and coeffs[j]:
                    acc -= row[j] * coeffs[j]
            coeffs[i] = acc / row[i]
        return tuple(coeffs)

    def scaled_inverse_columns(self) -> tuple[tuple[int, ...], ...]:
        """Columns of |G| * M^-1 as integer vectors (denominators divide |G|)."""
        if self._scaled_inverse_columns is None:
            n = self.lattice.group.order
            cols = []
            for j in range(self.size):
                rhs = [0] * self.size
                rhs[j] = n
                col = self.solve(rhs)
                if any(c.denominator != 1 for c in col):
                    raise AssertionError("scaled inverse not integral")
                cols.append(tuple(int(c) for c in col))
            self._scaled_inverse_columns = tuple(cols)
        return self._scaled_inverse_columns


def _fixed_cosets_per_class(lattice: SubgroupLattice, ksub: Subgroup) -> list[int]:
    """For each class rep H: the number of cosets gK with H^g inside K."""
    group = lattice.group
    kmask = ksub.mask
    counts = [0] * lattice.num_classes
    seen = 0
    for g in range(group.order):
        if (seen >> g) & 1:
            continue
        for x in ksub.members():
            seen |= 1 << group.mul(g, x)
        for hi, hidx in enumerate(lattice.class_reps):
            hsub = lattice.subgroups[hidx]
            if conjugate_subgroup(hsub, g).mask & ~kmask == 0:
                counts[hi] += 1
    return counts


_TABLES: dict[SubgroupLattice, TableOfMarks] = {}


def table_of_marks(lattice: SubgroupLattice) -> TableOfMarks:
    tab = _TABLES.get(lattice)
    if tab is None:
        tab = TableOfMarks(lattice)
        _TABLES[lattice] = tab
    return tab


@dataclass(frozen=True)
class MarkVector:
    """Ghost-ring coordinates: one integer mark per subgroup class."""

    lattice: SubgroupLattice
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.lattice.num_classes:
            raise ValueError("mark vector length mismatch")


class BurnsideElement:
    """Integer element of B(G) in the canonical transitive basis."""

    __slots__ = ("lattice", "coeffs")

    def __init__(self, lattice: SubgroupLattice, coeffs: Sequence[int]) -> None:
        if len(coeffs) != lattice.num_classes:
            raise ValueError("coefficient length mismatch")
        self.lattice = lattice
        self.coeffs = tuple(int(c) for c in coeffs)

    def marks(self) -> MarkVector:
        tab = table_of_marks(self.lattice)
        return MarkVector(self.lattice, tab.marks_of(self.coeffs))

    def mark_at(self, class_idx: int) -> int:
        return self.marks().values[class_idx]

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        return BurnsideElement(
            self.lattice, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        return BurnsideElement(
            self.lattice, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.lattice, [-a for a in self.coeffs])

    def __rmul__(self, scalar: int) -> "BurnsideElement":
        if not isinstance(scalar, int):
            return NotImplemented
        return BurnsideElement(self.lattice, [scalar * a for a in self.coeffs])

    def __mul__(self, other: "BurnsideElement") -> "BurnsideElement":
        """Ring product through the ghost ring: multiply marks pointwise."""
        self._check(other)
        ma = self.marks().values
        mb = other.marks().values
        prod = MarkVector(self.lattice, tuple(x * y for x, y in zip(ma, mb)))
        try:
            return from_marks(prod)
        except NotIntegralError as exc:  # closed under products; never expected
            raise AssertionError("ghost product left the integral lattice") from exc

    def _check(self, other: "BurnsideElement") -> None:
        if self.lattice is not other.lattice:
            raise ValueError("elements live over different lattices")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.lattice is other.lattice and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.lattice), self.coeffs))

    def __repr__(self) -> str:
        return f"BurnsideElement({self.lattice.group.name}, {self.coeffs})"


def zero_element(lattice: SubgroupLattice) -> BurnsideElement:
    return BurnsideElement(lattice, [0] * lattice.num_classes)


def transitive_element(lattice: SubgroupLattice, h: Subgroup) -> BurnsideElement:
    """The basis element G/H for the class of H."""
    coeffs = [0] * lattice.num_classes
    coeffs[lattice.class_index(h)] = 1
    return BurnsideElement(lattice, coeffs)


def identity_element(lattice: SubgroupLattice) -> BurnsideElement:
    return transitive_element(lattice, lattice.full())


def from_marks(marks: MarkVector) -> BurnsideElement:
    """Invert the mark homomorphism; fails when marks are not integral."""
    tab = table_of_marks(marks.lattice)
    coeffs = tab.solve(marks.values)
    bad = [i for i, c in enumerate(coeffs) if c.denominator != 1]
    if bad:
        raise NotIntegralError(
            f"marks {marks.values} are not in B({marks.lattice.group.name}): "
            f"non-integer coordinates at classes {bad}")
    return BurnsideElement(marks.lattice, [int(c) for c in coeffs])


def is_unit(a: BurnsideElement) -> bool:
    return all(v in (1, -1) for v in a.marks().values)


# -- primitive rational idempotents -------------------------------------------


@dataclass(frozen=True)
class RationalIdempotent:
    """e_H in QB(G): rational coordinates in the canonical basis."""

    lattice: SubgroupLattice
    class_idx: int
    coeffs: tuple[Fraction, ...]

    def marks(self) -> tuple[Fraction, ...]:
        return table_of_marks(self.lattice).marks_of_rational(self.coeffs)


def primitive_idempotent(lattice: SubgroupLattice, h: Subgroup) -> RationalIdempotent:
    """The primitive idempotent of QB(G) indexed by the class of H.

    Coordinates come from the Gluck/Yoshida formula: sum |K| mu(K, H) G/K
    over all subgroups K of H, divided by |N_G(H)|.
    """
    from .groups import normalizer

    cls = lattice.class_index(h)
    rep = lattice.rep(cls)
    norm_order = normalizer(lattice.group, rep).order
    coeffs = [Fraction(0)] * lattice.num_classes
    for k in lattice.subgroups:
        if k.mask & ~rep.mask:
            continue
        mu = lattice.mobius(k, rep)
        if mu:
            coeffs[lattice.class_index(k)] += Fraction(k.order * mu, norm_order)
    return RationalIdempotent(lattice, cls, tuple(coeffs))


def solve_rational(lattice: SubgroupLattice,
                   marks: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Canonical coordinates of an arbitrary rational mark vector."""
    return table_of_marks(lattice).solve(marks)


# -- units ---------------------------------------------------------------------


class UnitElement:
    """A unit of B(G): integral with every mark +-1.

    ``signs`` is the F2 vector with bit i set iff the mark at class i is
    -1; the class order is the lattice order, fixed once per group.
    """

    __slots__ = ("lattice", "signs", "element")

    def __init__(self, lattice: SubgroupLattice, signs: int,
                 element: BurnsideElement) -> None:
        self.lattice = lattice
        self.signs = signs
        self.element = element

    @classmethod
    def from_signs(cls, lattice: SubgroupLattice, signs: int) -> "UnitElement":
        marks = tuple(-1 if (signs >> i) & 1 else 1
                      for i in range(lattice.num_classes))
        element = from_marks(MarkVector(lattice, marks))
        return cls(lattice, signs, element)

    @classmethod
    def from_element(cls, a: BurnsideElement) -> "UnitElement":
        marks = a.marks().values
        signs = 0
        for i, v in enumerate(marks):
            if v == -1:
                signs |= 1 << i
            elif v != 1:
                raise ValueError(f"element has mark {v} at class {i}; not a unit")
        return cls(a.lattice, signs, a)

    def marks(self) -> tuple[int, ...]:
        return tuple(-1 if (self.signs >> i) & 1 else 1
                     for i in range(self.lattice.num_classes))

    def sign_at(self, class_idx: int) -> int:
        return (self.signs >> class_idx) & 1

    def is_identity(self) -> bool:
        return self.signs == 0

    def mul(self, other: "UnitElement") -> "UnitElement":
        if self.lattice is not other.lattice:
            raise ValueError("units live over different lattices")
        return UnitElement.from_signs(self.lattice, self.signs ^ other.signs)

    def inverse(self) -> "UnitElement":
        # pointwise mark reciprocals; 1/(+-1) = +-1, so units are self-inverse
        recip = tuple(1 // m for m in self.marks())
        element = from_marks(MarkVector(self.lattice, recip))
        return UnitElement(self.lattice, self.signs, element)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitElement):
            return NotImplemented
        return self.lattice is other.lattice and self.signs == other.signs

    def __hash__(self) -> int:
        return hash((id(self.lattice), self.signs))

    def __repr__(self) -> str:
        bits = format(self.signs, f"0{self.lattice.num_classes}b")[::-1]
        return f"UnitElement({self.lattice.group.name}, signs={bits})"


def identity_unit(lattice: SubgroupLattice) -> UnitElement:
    return UnitElement(lattice, 0, identity_element(lattice))


class UnitGroup:
    """An F2-subspace of units, held as a reduced echelon sign basis.

    Equality compares the canonical bases, so two spans agree iff the
    objects compare equal.
    """

    def __init__(self, lattice: SubgroupLattice,
                 basis_signs: Sequence[int]) -> None:
        self.lattice = lattice
        rows = f2.rref(basis_signs)
        self.basis: tuple[UnitElement, ...] = tuple(
            UnitElement.from_signs(lattice, row) for row in rows)
        self._rows = rows

    @classmethod
    def from_units(cls, lattice: SubgroupLattice,
                   units: Sequence[UnitElement]) -> "UnitGroup":
        return cls(lattice, [u.signs for u in units])

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 1 << self.rank

    def contains(self, unit: UnitElement) -> bool:
        return f2.in_span(unit.signs, self._rows)

    def contains_group(self, other: "UnitGroup") -> bool:
        return all(f2.in_span(row, self._rows) for row in other._rows)

    def elements(self):
        """All units in the span, in subset order of the basis."""
        for bits in range(1 << self.rank):
            signs = 0
            b = bits
            i = 0
            while b:
                if b & 1:
                    signs ^= self._rows[i]
                b >>= 1
                i += 1
            yield UnitElement.from_signs(self.lattice, signs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitGroup):
            return NotImplemented
        return self.lattice is other.lattice and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((id(self.lattice), tuple(self._rows)))

    def __repr__(self) -> str:
        return (f"UnitGroup({self.lattice.group.name}, rank={self.rank}, "
                f"order={self.order})")
