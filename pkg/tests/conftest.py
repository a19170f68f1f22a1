"""Shared fixtures and oracle helpers for the test suite."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import pytest

from burnside.groups import Group, build_family, direct_product


@lru_cache(maxsize=None)
def named_group(name: str) -> Group:
    """Build corpus groups by compact name (C8, D16, Q8, SD16, C2xC4, ...)."""
    if "x" in name:
        parts = name.split("x")
        g = named_group(parts[0])
        for part in parts[1:]:
            g = direct_product(g, named_group(part))
        g.name = name
        return g
    families = {"C": "cyclic", "D": "dihedral", "Q": "quaternion", "SD": "semidihedral"}
    for prefix in ("SD", "C", "D", "Q"):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return build_family(families[prefix], int(name[len(prefix):]))
    raise ValueError(f"unknown test group {name!r}")


@pytest.fixture
def group_by_name():
    return named_group


def subgroup_masks_oracle(group: Group) -> set[int]:
    """Independent subgroup enumeration: test closure of every subset that
    contains the identity and has size dividing the group order."""
    n = group.order
    sizes = [k for k in range(1, n + 1) if n % k == 0]
    found: set[int] = set()
    rest = list(range(1, n))
    for k in sizes:
        for combo in combinations(rest, k - 1):
            members = (0,) + combo
            mask = 0
            for x in members:
                mask |= 1 << x
            closed = True
            for a in members:
                row = group._table[a]
                for b in members:
                    if not (mask >> row[b]) & 1:
                        closed = False
                        break
                if not closed:
                    break
            if closed:
                found.add(mask)
    return found


DEFAULT_CORPUS = [
    "C2", "C4", "C8", "C16", "C2xC2", "C2xC4", "C2xC2xC2",
    "D8", "D16", "D32", "Q8", "Q16", "SD16", "SD32",
    "C3", "C9", "C27", "C3xC3",
]
