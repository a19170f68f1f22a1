"""Unit-group enumeration, canonical generators, and the exponential map."""

from __future__ import annotations

import random

import pytest

from burnside.groups import GroupError, build_family, center
from burnside.lattice import lattice_of
from burnside.ring import (
    BurnsideElement,
    identity_element,
    transitive_element,
)
from burnside.units import (
    BudgetError,
    enumerate_units_bruteforce,
    epsilon_embed,
    exp_element,
    exp_image,
    minus_identity,
    resolve_budget,
    units_via_genetic_basis,
    upsilon,
    verify_rank_theorem,
)
from conftest import named_group


def lat(name):
    return lattice_of(named_group(name))


def test_brute_force_c2_exact_elements():
    units = enumerate_units_bruteforce(lat("C2"))
    assert units.order == 4
    coeff_sets = {u.element.coeffs for u in units.elements()}
    # +-P/P and +-(P/P - P/1) in (trivial, full) class order
    assert coeff_sets == {(0, 1), (0, -1), (-1, 1), (1, -1)}


def test_brute_force_odd_groups_trivial():
    for name in ("C3", "C9", "C27", "C3xC3"):
        units = enumerate_units_bruteforce(lat(name))
        assert units.order == 2
        signs = {u.signs for u in units.elements()}
        assert signs == {0, (1 << units.lattice.num_classes) - 1}


def test_brute_force_d16_rank():
    units = enumerate_units_bruteforce(lat("D16"))
    assert units.rank == 6 and units.order == 64


def test_brute_force_closure_under_product():
    units = enumerate_units_bruteforce(lat("D8"))
    basis = units.basis
    for a in basis:
        for b in basis:
            assert units.contains(a.mul(b))
            prod = a.element * b.element
            assert prod == a.mul(b).element


def test_budget_enforced(monkeypatch):
    l = lat("D8")
    from burnside import units as units_mod
    units_mod._BRUTE_CACHE.pop(l, None)
    with pytest.raises(BudgetError):
        enumerate_units_bruteforce(l, budget=4)
    monkeypatch.setenv("BURNSIDE_BUDGET", "8")
    assert resolve_budget() == 8
    with pytest.raises(BudgetError):
        enumerate_units_bruteforce(l, budget=None)
    monkeypatch.delenv("BURNSIDE_BUDGET")
    assert resolve_budget(123) == 123


def test_upsilon_trivial():
    triv = build_family("cyclic", 1)
    u = upsilon(triv)
    assert u.element.coeffs == (-1,)


def test_upsilon_c2():
    u = upsilon(named_group("C2"))
    assert u.element.coeffs == (-1, 1)  # P/P - P/1
    assert u.marks() == (-1, 1)


@pytest.mark.parametrize("name", ["D16", "D32"])
def test_upsilon_dihedral_marks(name):
    g = named_group(name)
    l = lattice_of(g)
    u = upsilon(g)
    zmask = center(g).mask
    for ci in range(l.num_classes):
        rep = l.rep(ci)
        noncentral_involution = rep.order == 2 and rep.mask & zmask == 1
        assert u.sign_at(ci) == (1 if noncentral_involution else 0)


def test_upsilon_unsupported():
    with pytest.raises(GroupError):
        upsilon(named_group("C4"))
    with pytest.raises(GroupError):
        upsilon(named_group("D8"))
    with pytest.raises(GroupError):
        upsilon(named_group("Q16"))


def test_genetic_units_c2xc2():
    units = units_via_genetic_basis(named_group("C2xC2"))
    assert units.rank == 4


def test_genetic_units_q8():
    units = units_via_genetic_basis(named_group("Q8"))
    assert units.rank == 4


def test_genetic_units_d16():
    units = units_via_genetic_basis(named_group("D16"))
    assert units.rank == 6
    assert units == enumerate_units_bruteforce(lat("D16"))


def test_genetic_units_odd():
    units = units_via_genetic_basis(named_group("C9"))
    assert units.rank == 1
    assert units.contains(minus_identity(lat("C9")))


def test_epsilon_embed():
    l = lat("C2")
    ident = enumerate_units_bruteforce(l)
    assert epsilon_embed(minus_identity(l)) == 0b11
    ups = upsilon(named_group("C2"))
    assert epsilon_embed(ups) == 0b01
    from burnside.ring import identity_unit
    assert epsilon_embed(identity_unit(l)) == 0
    assert ident.contains(ups)


def test_exp_element_zero_and_identity():
    l = lat("D8")
    zero = BurnsideElement(l, [0] * l.num_classes)
    assert exp_element(l, zero).is_identity()
    assert exp_element(l, identity_element(l)) == minus_identity(l)


def test_exp_element_c2_free_orbit():
    l = lat("C2")
    x = transitive_element(l, l.trivial())
    assert exp_element(l, x).marks() == (1, -1)


def test_exp_is_additive_to_multiplicative():
    rng = random.Random(5)
    for name in ("C4", "D8", "Q8", "C3xC3"):
        l = lat(name)
        for _ in range(25):
            a = BurnsideElement(l, [rng.randint(-3, 3) for _ in range(l.num_classes)])
            b = BurnsideElement(l, [rng.randint(-3, 3) for _ in range(l.num_classes)])
            assert exp_element(l, a + b) == exp_element(l, a).mul(exp_element(l, b))


def test_exp_image_c2_surjective():
    l = lat("C2")
    image = exp_image(l)
    assert image == enumerate_units_bruteforce(l)


def test_exp_image_d16_not_surjective():
    l = lat("D16")
    image = exp_image(l)
    units = enumerate_units_bruteforce(l)
    assert image.rank == 5
    assert units.rank == 6
    assert units.contains_group(image)
    assert not image.contains_group(units)


def test_f1_action_fixes_exactly_the_faithful_units():
    # fixed by the f_1 action <=> every proper deflation is the identity unit
    from burnside.bisets import deflation_biset, f1_idempotent, transport_unit, \
        transport_virtual
    for name in ("C2xC2", "Q8", "D8"):
        g = named_group(name)
        l = lattice_of(g)
        f1 = f1_idempotent(g)
        deflations = [deflation_biset(g, n) for n in l.normal_subgroups()
                      if n.order > 1]
        for u in enumerate_units_bruteforce(l).elements():
            fixed = transport_virtual(f1, u) == u
            killed = all(transport_unit(d, u).is_identity() for d in deflations)
            assert fixed == killed


def test_f1_action_annihilates_inflated_units():
    from burnside.bisets import f1_idempotent, inflation_biset, transport_unit, \
        transport_virtual
    for name in ("D8", "Q8", "C2xC4"):
        g = named_group(name)
        l = lattice_of(g)
        f1 = f1_idempotent(g)
        for n in l.normal_subgroups():
            if n.order == 1:
                continue
            inf = inflation_biset(g, n)
            qlat = lattice_of(inf.right_group)
            for q_unit in enumerate_units_bruteforce(qlat).elements():
                inflated = transport_unit(inf, q_unit)
                assert transport_virtual(f1, inflated).is_identity()


def test_faithful_trivial_when_center_large():
    from burnside.bisets import faithful_part
    for name in ("C2xC4", "C2xC2xC2", "C16"):
        l = lat(name)
        assert faithful_part(enumerate_units_bruteforce(l)).order == 1, name


def test_upsilon_lies_in_faithful_part():
    from burnside.bisets import faithful_part
    for name in ("D16", "D32"):
        g = named_group(name)
        l = lattice_of(g)
        part = faithful_part(enumerate_units_bruteforce(l))
        assert part.order == 2
        assert part.contains(upsilon(g))


def test_verify_rank_theorem_samples():
    check = verify_rank_theorem(named_group("D16"))
    assert (check.brute_rank, check.genetic_rank, check.formula_rank) == (6, 6, 6)
    assert check.passed
    check = verify_rank_theorem(named_group("SD16"))
    assert (check.brute_rank, check.genetic_rank, check.formula_rank) == (5, 5, 5)
    assert check.passed
    check = verify_rank_theorem(named_group("C3"))
    assert (check.brute_rank, check.genetic_rank, check.formula_rank) == (1, 1, 1)
    assert check.passed
