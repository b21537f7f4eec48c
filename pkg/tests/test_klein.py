import math

import pytest
from hypothesis import given, settings, strategies as st

from leftorder.klein import (
    IDENTITY,
    AffineAction,
    KbElement,
    KbSubgroup,
    distinct_coset_representatives,
    index_pair_check,
    kb_center_description,
    kb_centralizer_membership,
    kb_inv,
    kb_mul,
    kb_pow,
    random_axiom_audit,
    subgroup_index,
    subgroup_intersect,
    y_centralizer,
)

# Independent oracle, kept deliberately separate from the library's
# AffineAction: an element (n, m) acts on integer pairs by
# (u, v) -> (u + n, (-1)^n v + m), and applying the action of a first and
# then the action of b realizes the product a*b.


def oracle_action(g):
    return (g[0], -1 if g[0] % 2 else 1, g[1])


def oracle_compose(first, second):
    s1, e1, o1 = first
    s2, e2, o2 = second
    return (s1 + s2, e1 * e2, e2 * o1 + o2)


def oracle_mul(a, b):
    shift, sign, offset = oracle_compose(oracle_action(a), oracle_action(b))
    assert sign == (-1 if shift % 2 else 1)
    return KbElement(shift, offset)


big = st.integers(min_value=-(10**18), max_value=10**18)
elements = st.builds(KbElement, big, big)
small_elements = st.builds(
    KbElement, st.integers(min_value=-9, max_value=9), st.integers(min_value=-9, max_value=9)
)


class TestProduct:
    def test_frozen_example_against_oracle(self):
        a, b = KbElement(1, 2), KbElement(3, 5)
        assert oracle_mul(a, b) == KbElement(4, 3)
        assert kb_mul(a, b) == KbElement(4, 3)

    @given(elements)
    def test_identity_neutral(self, g):
        assert kb_mul(IDENTITY, g) == g
        assert kb_mul(g, IDENTITY) == g

    @given(st.integers(-50, 50), st.integers(-50, 50))
    def test_generator_translations(self, a, b):
        g = KbElement(a, b)
        assert kb_mul(KbElement(1, 0), g) == KbElement(a + 1, b)
        assert kb_mul(g, KbElement(1, 0)) == KbElement(a + 1, -b)

    @given(elements, elements)
    def test_agrees_with_oracle(self, a, b):
        assert kb_mul(a, b) == oracle_mul(a, b)

    @given(elements, elements, elements)
    def test_associativity(self, a, b, c):
        assert kb_mul(kb_mul(a, b), c) == kb_mul(a, kb_mul(b, c))

    def test_defining_relation(self):
        x, y = KbElement(1, 0), KbElement(0, 1)
        assert kb_mul(kb_mul(kb_inv(x), y), x) == KbElement(0, -1)


class TestInverse:
    def test_frozen_examples(self):
        assert kb_inv(KbElement(3, 5)) == KbElement(-3, 5)
        assert oracle_mul(KbElement(3, 5), KbElement(-3, 5)) == IDENTITY
        assert kb_inv(IDENTITY) == IDENTITY
        assert kb_inv(KbElement(2, 7)) == KbElement(-2, -7)
        assert oracle_mul(KbElement(2, 7), KbElement(-2, -7)) == IDENTITY

    @given(elements)
    def test_two_sided(self, g):
        assert kb_mul(g, kb_inv(g)) == IDENTITY
        assert kb_mul(kb_inv(g), g) == IDENTITY


class TestPower:
    @given(st.integers(-100, 100))
    def test_odd_square_collapses_y(self, m):
        # x y^m squares to x^2 regardless of m: equal squares, distinct roots
        assert kb_pow(KbElement(1, m), 2) == KbElement(2, 0)
        if m != 0:
            assert KbElement(1, m) != KbElement(1, 0)

    def test_y_axis_powers(self):
        assert kb_pow(KbElement(0, 3), 5) == KbElement(0, 15)

    def test_frozen_cube(self):
        g = KbElement(1, 1)
        expected = oracle_mul(oracle_mul(g, g), g)
        assert expected == KbElement(3, 1)
        assert kb_pow(g, 3) == expected

    @given(small_elements, st.integers(-8, 8), st.integers(-8, 8))
    def test_additive_in_exponent(self, g, j, k):
        assert kb_pow(g, j + k) == kb_mul(kb_pow(g, j), kb_pow(g, k))

    @given(small_elements, st.integers(0, 8))
    def test_negative_is_inverse_power(self, g, k):
        assert kb_pow(g, -k) == kb_inv(kb_pow(g, k))


class TestCentralizers:
    @given(st.integers(-30, 30), st.integers(-30, 30))
    def test_x_centralizer_criterion(self, a, b):
        assert kb_centralizer_membership(KbElement(1, 0), KbElement(a, b)) == (b == 0)

    @given(st.integers(-30, 30), st.integers(-30, 30))
    def test_y_centralizer_contains_even_lattice(self, n, m):
        assert kb_centralizer_membership(KbElement(0, 1), KbElement(2 * n, m))

    @given(elements)
    def test_self_commutes(self, g):
        assert kb_centralizer_membership(g, g)

    @given(elements)
    def test_square_in_y_centralizer(self, g):
        assert y_centralizer().contains(kb_pow(g, 2))

    def test_center_by_brute_force(self):
        center = kb_center_description()
        assert center == KbSubgroup.cyclic_x(2)
        x, y = KbElement(1, 0), KbElement(0, 1)
        box = [KbElement(n, m) for n in range(-8, 9) for m in range(-8, 9)]
        commuting = {
            g
            for g in box
            if kb_centralizer_membership(g, x) and kb_centralizer_membership(g, y)
        }
        assert commuting == {g for g in box if center.contains(g)}
        assert center.contains(KbElement(2, 0))
        assert not center.contains(KbElement(0, 1))


def box_members(subgroup, radius=12):
    return {
        KbElement(n, m)
        for n in range(-radius, radius + 1)
        for m in range(-radius, radius + 1)
        if subgroup.contains(KbElement(n, m))
    }


FAMILY = [
    KbSubgroup.full(),
    KbSubgroup.trivial(),
    KbSubgroup.cyclic_x(1),
    KbSubgroup.cyclic_x(2),
    KbSubgroup.cyclic_y(1),
    KbSubgroup.cyclic_y(3),
    KbSubgroup.lattice(2, 1),
    KbSubgroup.lattice(3, 2),
]


class TestSubgroups:
    @pytest.mark.parametrize("h", FAMILY)
    @pytest.mark.parametrize("k", FAMILY)
    def test_intersection_matches_box_enumeration(self, h, k):
        meet = subgroup_intersect(h, k)
        assert box_members(meet) == box_members(h) & box_members(k)

    def test_frozen_intersections(self):
        assert subgroup_intersect(
            KbSubgroup.lattice(2, 1), KbSubgroup.lattice(3, 1)
        ) == KbSubgroup.lattice(6, 1)
        assert subgroup_intersect(KbSubgroup.cyclic_x(1), KbSubgroup.cyclic_y(1)) == (
            KbSubgroup.trivial()
        )
        for h in FAMILY:
            assert subgroup_intersect(h, KbSubgroup.full()) == h

    @pytest.mark.parametrize("h", FAMILY)
    @pytest.mark.parametrize("k", FAMILY)
    def test_subgroup_closure_under_products(self, h, k):
        meet = subgroup_intersect(h, k)
        members = sorted(box_members(meet, 6), key=tuple)[:12]
        for a in members:
            for b in members:
                assert meet.contains(kb_mul(a, kb_inv(b)))

    def test_index_pairs_frozen(self):
        assert index_pair_check(KbSubgroup.cyclic_x(1), KbSubgroup.cyclic_y(1)) == (
            math.inf,
            math.inf,
        )
        assert index_pair_check(KbSubgroup.full(), y_centralizer()) == (2, 1)
        for h in FAMILY:
            assert index_pair_check(h, h) == (1, 1)

    @pytest.mark.parametrize(
        "h,j,expected",
        [
            (KbSubgroup.full(), y_centralizer(), 2),
            (KbSubgroup.full(), KbSubgroup.lattice(3, 2), 6),
            (KbSubgroup.cyclic_x(1), KbSubgroup.cyclic_x(4), 4),
            (KbSubgroup.lattice(2, 1), KbSubgroup.lattice(2, 3), 3),
        ],
    )
    def test_finite_index_matches_coset_counting(self, h, j, expected):
        assert subgroup_index(h, j) == expected
        reps = {j.coset_rep(g) for g in box_members(h, 12)}
        assert len(reps) == expected

    def test_infinite_index_has_coset_evidence(self):
        reps = distinct_coset_representatives(
            KbSubgroup.cyclic_x(1), KbSubgroup.trivial(), 25
        )
        assert len(set(reps)) == 25

    def test_index_requires_containment(self):
        with pytest.raises(ValueError):
            subgroup_index(KbSubgroup.cyclic_x(2), KbSubgroup.cyclic_y(2))


def test_random_audit_is_clean():
    from random import Random

    failures = random_axiom_audit(2000, 10**18, Random(7))
    assert not any(failures.values())


def test_affine_action_round_trip():
    g = KbElement(5, -7)
    assert AffineAction.of(g).to_element() == g
    with pytest.raises(ValueError):
        AffineAction(1, 1, 0).to_element()
