"""GF(2) linear algebra on int bitmasks (bit j = coordinate j)."""

from __future__ import annotations

from typing import Iterable


def rref(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon basis of the span, pivots in ascending bit order.

    The output is the canonical basis of the row space: two collections of
    vectors span the same subspace iff their rref lists are equal.
    """
    basis: list[int] = []  # kept reduced, sorted by pivot bit
    for row in rows:
        row = _reduce(row, basis)
        if row == 0:
            continue
        pivot = row & -row
        basis = [b ^ row if b & pivot else b for b in basis]
        basis.append(row)
        basis.sort(key=lambda b: b & -b)
    return basis


def _reduce(vec: int, basis: list[int]) -> int:
    for b in basis:
        if vec & (b & -b):
            vec ^= b
    return vec


def in_span(vec: int, basis: list[int]) -> bool:
    """Membership test; ``basis`` must be in reduced echelon form."""
    return _reduce(vec, basis) == 0


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))
