"""Permutation and group engine tests."""

from __future__ import annotations

import random

import pytest

from voltcov.errors import (
    DegreeMismatch,
    NotASubgroup,
    NotInAmbientGroup,
    OrderCapExceeded,
    SpecFormatError,
)
from voltcov.permgrp import (
    Group,
    Perm,
    RightCoset,
    conjugate,
    core,
    generate,
    generated_by,
    intersection,
    right_cosets,
    trivial_group,
)


def closure_oracle(degree, gens):
    """Independent brute-force closure: multiply until nothing new appears."""
    elements = {Perm.identity(degree)} | set(gens)
    while True:
        fresh = {a * b for a in elements for b in elements} - elements
        if not fresh:
            return elements
        elements |= fresh


@pytest.fixture
def s6_pieces():
    sigma = Perm.parse("(1 2 3)(5 4 6)", 6)
    rho = Perm.parse("(2 3)(4 5)", 6)
    group = generate(6, [sigma, rho])
    return sigma, rho, group


def test_composition_is_left_to_right():
    p = Perm.parse("(1 2)", 3)
    q = Perm.parse("(2 3)", 3)
    assert (p * q)[0] == q[p[0]] == 2
    assert str(p * q) == "(1 3 2)"


def test_inverse_and_powers():
    p = Perm.parse("(1 2 3)(5 4 6)", 6)
    assert p * p.inverse() == Perm.identity(6)
    assert p ** 3 == Perm.identity(6)
    assert p ** -1 == p.inverse()


def test_conjugation_convention():
    g = Perm.parse("(1 2)", 4)
    h = Perm.parse("(1 3)", 4)
    assert g.conj(h) == h.inverse() * g * h
    assert str(g.conj(h)) == "(2 3)"


def test_cycle_string_round_trip():
    for text in ("()", "(1 2)", "(1 2 3)(5 4 6)", "(2 3)(4 5)"):
        p = Perm.parse(text, 6)
        assert Perm.parse(str(p), 6) == p
    assert str(Perm.identity(4)) == "()"
    assert str(Perm.parse("(1 2 3)(5 4 6)", 6)) == "(1 2 3)(4 6 5)"


def test_parse_rejects_garbage():
    with pytest.raises(SpecFormatError):
        Perm.parse("(1 2", 4)
    with pytest.raises(SpecFormatError):
        Perm.parse("(1 2)(2 3)", 4)
    with pytest.raises(SpecFormatError):
        Perm.parse("(0 1)", 4)
    with pytest.raises(SpecFormatError):
        Perm.parse("(1 9)", 4)


def test_generate_s6_fixture_order(s6_pieces):
    sigma, rho, group = s6_pieces
    assert group.order == 6
    assert set(group.elements) == closure_oracle(6, [sigma, rho])


def test_generate_empty_is_trivial():
    group = generate(4, [])
    assert group.order == 1
    assert group.identity in group


def test_generate_single_product(s6_pieces):
    sigma, rho, _ = s6_pieces
    group = generate(6, [rho * sigma])
    assert group.order == 2
    assert set(group.elements) == closure_oracle(6, [rho * sigma])


def test_generate_checks_degree():
    with pytest.raises(DegreeMismatch):
        generate(4, [Perm.identity(5)])


def test_generate_cap():
    cycle = Perm([(i + 1) % 9 for i in range(9)])
    swap = Perm([1, 0] + list(range(2, 9)))
    with pytest.raises(OrderCapExceeded):
        generate(9, [cycle, swap], cap=1000)


def test_right_cosets_fixture(s6_pieces):
    sigma, rho, group = s6_pieces
    h = generate(6, [rho])
    cosets = right_cosets(h, group)
    assert len(cosets) == 3
    seen = set()
    for c in cosets:
        members = set(c)
        assert len(members) == 2
        assert c.representative == min(members)
        assert not (members & seen)
        seen |= members
    assert seen == set(group.elements)
    # canonical representative order is sorted
    reps = [c.representative for c in cosets]
    assert reps == sorted(reps)


def test_right_cosets_whole_group_and_trivial(s6_pieces):
    _, _, group = s6_pieces
    assert len(right_cosets(group, group)) == 1
    assert right_cosets(group, group)[0].representative == group.identity
    assert len(right_cosets(trivial_group(6), group)) == 6


def test_right_cosets_requires_subgroup(s6_pieces):
    _, rho, group = s6_pieces
    other = generate(6, [Perm.parse("(1 6)", 6)])
    with pytest.raises(NotASubgroup):
        right_cosets(other, group)


def test_conjugate_fixture(s6_pieces):
    sigma, rho, group = s6_pieces
    k = generate(6, [rho * sigma])
    conj = conjugate(k, sigma)
    assert conj.order == 2
    # elementwise oracle
    assert set(conj.elements) == {sigma.inverse() * h * sigma for h in k}
    assert conj == generate(6, [rho])


def test_conjugate_by_identity(s6_pieces):
    _, rho, group = s6_pieces
    h = generate(6, [rho])
    assert conjugate(h, group.identity) == h


def test_conjugate_preserves_order(s6_pieces):
    _, _, group = s6_pieces
    rng = random.Random(7)
    for _ in range(20):
        gens = [rng.choice(group.elements) for _ in range(2)]
        h = generated_by(group, gens)
        g = rng.choice(group.elements)
        assert conjugate(h, g).order == h.order


def test_core_fixture(s6_pieces):
    _, rho, group = s6_pieces
    h = generate(6, [rho])
    # intersection of all conjugates, by brute force
    expected = set(h.elements)
    for g in group:
        expected &= {g.inverse() * x * g for x in h}
    c = core(h, group)
    assert set(c.elements) == expected
    assert c.order == 1


def test_core_of_normal_subgroup(s6_pieces):
    sigma, _, group = s6_pieces
    n = generate(6, [sigma])
    assert n.is_normal_in(group)
    assert core(n, group) == n
    assert core(group, group) == group


def test_core_is_normal_and_inside_conjugates(s6_pieces):
    _, _, group = s6_pieces
    rng = random.Random(3)
    for _ in range(10):
        h = generated_by(group, [rng.choice(group.elements)])
        c = core(h, group)
        assert c.is_normal_in(group)
        for g in group:
            assert c.is_subgroup_of(conjugate(h, g))


def test_generated_by_fixture(s6_pieces):
    sigma, rho, group = s6_pieces
    h = generate(6, [rho])
    k = generate(6, [rho * sigma])
    assert generated_by(group, [h, k]) == group
    assert generated_by(group, []).order == 1
    assert generated_by(group, [h, conjugate(k, sigma)]).order == 2


def test_generated_by_rejects_outsiders(s6_pieces):
    _, _, group = s6_pieces
    with pytest.raises(NotInAmbientGroup):
        generated_by(group, [Perm.parse("(1 6)", 6)])
    with pytest.raises(NotInAmbientGroup):
        generated_by(group, [generate(6, [Perm.parse("(1 6)", 6)])])


def test_lagrange_on_random_subgroups(s6_pieces):
    _, _, group = s6_pieces
    rng = random.Random(11)
    for _ in range(15):
        h = generated_by(group, [rng.choice(group.elements)])
        assert h.order * len(right_cosets(h, group)) == group.order


def test_coset_representatives_stable(s6_pieces):
    _, rho, group = s6_pieces
    h = generate(6, [rho])
    first = [c.representative for c in right_cosets(h, group)]
    second = [c.representative for c in right_cosets(h, group)]
    assert first == second


def test_conjugation_composes(s6_pieces):
    _, _, group = s6_pieces
    rng = random.Random(5)
    for _ in range(25):
        g, h, k = (rng.choice(group.elements) for _ in range(3))
        assert g.conj(h).conj(k) == g.conj(h * k)


def test_coset_membership_and_equality(s6_pieces):
    sigma, rho, group = s6_pieces
    h = generate(6, [rho])
    a = RightCoset(h, sigma)
    b = RightCoset(h, rho * sigma)
    assert a == b
    assert sigma in a and rho * sigma in a
    assert group.identity not in a


def test_intersection():
    a = generate(4, [Perm.parse("(1 2)", 4)])
    b = generate(4, [Perm.parse("(1 2)(3 4)", 4)])
    assert intersection(a, b).order == 1
    assert intersection(a, a) == a
