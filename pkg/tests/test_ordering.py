import itertools

import pytest
from hypothesis import given, strategies as st

from leftorder.klein import (
    IDENTITY,
    KbElement,
    KbSubgroup,
    kb_center_description,
    kb_inv,
    kb_mul,
)
from leftorder.ordering import (
    CofinalityError,
    Cmp,
    FiniteCover,
    InfiniteWitness,
    KbInterval,
    RightCoset,
    coset_cofinal_witness,
    coset_membership,
    interval_construct,
    interval_coset_cover,
    kb_compare,
    kb_lt,
)

coords = st.integers(min_value=-(10**12), max_value=10**12)
elements = st.builds(KbElement, coords, coords)


class TestCompare:
    def test_frozen_examples(self):
        assert kb_compare(KbElement(0, 5), KbElement(1, -100)) is Cmp.LT
        assert kb_compare(KbElement(2, 3), KbElement(2, 3)) is Cmp.EQ
        assert kb_compare(KbElement(1, 4), KbElement(1, 2)) is Cmp.GT

    @given(elements, elements)
    def test_totality_and_antisymmetry(self, a, b):
        c1, c2 = kb_compare(a, b), kb_compare(b, a)
        assert c1 is Cmp(-c2)
        assert (c1 is Cmp.EQ) == (a == b)

    @given(elements, elements)
    def test_order_type_is_lexicographic_pairs(self, a, b):
        # the identity on coordinates is an order isomorphism onto lex Z x Z
        by_tuple = (tuple(a) > tuple(b)) - (tuple(a) < tuple(b))
        assert kb_compare(a, b) is Cmp(by_tuple)

    @given(elements, elements, elements)
    def test_left_invariance(self, f, g, h):
        if kb_compare(g, h) is Cmp.LT:
            assert kb_compare(kb_mul(f, g), kb_mul(f, h)) is Cmp.LT

    def test_right_invariance_fails(self):
        g, h, f = IDENTITY, KbElement(0, 1), KbElement(1, 0)
        assert kb_lt(g, h)
        assert kb_lt(kb_mul(h, f), kb_mul(g, f))  # order flipped on the right

    @given(coords, coords, elements)
    def test_y_axis_is_convex(self, a, b, g):
        lo, hi = KbElement(0, min(a, b)), KbElement(0, max(a, b))
        if kb_lt(lo, g) and kb_lt(g, hi):
            assert g.n == 0


class TestIntervals:
    def test_construct_with_witnesses(self):
        interval, witnesses = interval_construct(2, 0)
        assert interval == KbInterval(KbElement(0, 0), KbElement(0, 2))
        assert witnesses == [KbElement(0, 0), KbElement(0, 1), KbElement(0, 2)]
        axis = KbSubgroup.cyclic_x(1)
        for j, w in enumerate(witnesses):
            assert interval.contains(w)
            assert coset_membership(RightCoset(axis, KbElement(0, j)), w)

    def test_degenerate(self):
        interval, witnesses = interval_construct(0, 5)
        assert interval.lo == interval.hi == KbElement(5, 0)
        assert witnesses == [KbElement(5, 0)]

    @given(st.integers(0, 6), st.integers(-20, 20), st.integers(-20, 20))
    def test_distinct_xpowers_disjoint(self, span, k1, k2):
        i1, _ = interval_construct(span, k1)
        i2, _ = interval_construct(span, k2)
        assert i1.is_disjoint_from(i2) == (k1 != k2)

    def test_bad_endpoints_rejected(self):
        with pytest.raises(ValueError):
            KbInterval(KbElement(1, 0), KbElement(0, 5))

    @given(elements, elements, elements)
    def test_midpoint_inside(self, a, b, c):
        lo, hi = sorted((a, b), key=tuple)
        interval = KbInterval(lo, hi)
        assert interval.contains(interval.midpoint())


class TestCosets:
    def test_membership_frozen(self):
        c = RightCoset(KbSubgroup.cyclic_x(1), KbElement(0, 3))
        # difference (7,3)*(0,3)^-1 computed by hand: (7, 0), an x-power
        assert kb_mul(KbElement(7, 3), kb_inv(KbElement(0, 3))) == KbElement(7, 0)
        assert coset_membership(c, KbElement(7, 3))
        assert not coset_membership(c, KbElement(7, 4))

    @given(elements)
    def test_contains_own_rep(self, g):
        for sub in (KbSubgroup.cyclic_x(2), KbSubgroup.lattice(3, 2), KbSubgroup.trivial()):
            assert coset_membership(RightCoset(sub, g), g)

    @given(elements, elements)
    def test_equal_or_disjoint(self, g1, g2):
        sub = KbSubgroup.lattice(2, 3)
        c1, c2 = RightCoset(sub, g1), RightCoset(sub, g2)
        same = c1.canonical_rep == c2.canonical_rep
        assert same == c1.same_coset(c2)
        assert same == coset_membership(c1, g2)

    @given(elements)
    def test_canonical_rep_in_coset(self, g):
        for sub in (KbSubgroup.cyclic_x(3), KbSubgroup.cyclic_y(2), KbSubgroup.lattice(2, 2)):
            c = RightCoset(sub, g)
            assert coset_membership(c, c.canonical_rep)


class TestCofinalWitness:
    def test_lattice_example(self):
        h = KbSubgroup.lattice(2, 1)
        w = coset_cofinal_witness(h, IDENTITY, KbElement(5, 5))
        assert kb_lt(KbElement(5, 5), w)
        assert coset_membership(RightCoset(h, IDENTITY), w)

    def test_bound_below_coset_rep(self):
        h = KbSubgroup.lattice(2, 1)
        c = KbElement(3, 1)
        assert coset_cofinal_witness(h, c, KbElement(0, 0)) == c

    def test_trivial_subgroup_rejected(self):
        with pytest.raises(CofinalityError):
            coset_cofinal_witness(KbSubgroup.trivial(), KbElement(3, 1), IDENTITY)

    def test_y_axis_cannot_pass_positive_x(self):
        with pytest.raises(CofinalityError):
            coset_cofinal_witness(KbSubgroup.cyclic_y(1), KbElement(0, 0), KbElement(1, 0))

    @given(elements, elements)
    def test_witness_beats_bound_in_coset(self, c, bound):
        for h in (KbSubgroup.full(), KbSubgroup.cyclic_x(3), KbSubgroup.lattice(2, 2)):
            w = coset_cofinal_witness(h, c, bound)
            assert kb_lt(bound, w)
            assert coset_membership(RightCoset(h, c), w)


class TestIntervalCosetCover:
    def test_full_group_single_coset(self):
        result = interval_coset_cover(KbElement(0, 5), KbSubgroup.full(), 1)
        assert isinstance(result, FiniteCover)
        assert len(result.cosets) == 1

    def test_y_axis_segment_one_coset(self):
        result = interval_coset_cover(KbElement(0, 5), KbSubgroup.cyclic_y(1), 1)
        assert isinstance(result, FiniteCover)
        assert len(result.cosets) == 1
        for t in range(6):
            assert result.covers(KbElement(0, t))

    def test_central_cosets_fail_on_x_interval(self):
        result = interval_coset_cover(KbElement(1, 0), kb_center_description(), 100)
        assert isinstance(result, InfiniteWitness)
        witnesses = result.take(250)
        interval = KbInterval(IDENTITY, KbElement(1, 0))
        center = kb_center_description()
        reps = {center.coset_rep(w) for w in witnesses}
        assert len(reps) == 250
        assert all(interval.contains(w) for w in witnesses)
        # algebraic cross-check on a prefix: no witness in another's coset
        for a, b in itertools.combinations(witnesses[:20], 2):
            assert not coset_membership(RightCoset(center, a), b)

    def test_finite_covers_validated_by_sampling(self):
        x = KbElement(2, 3)
        for sub in (KbSubgroup.cyclic_y(2), KbSubgroup.lattice(2, 3), KbSubgroup.full()):
            result = interval_coset_cover(x, sub, 1000)
            assert isinstance(result, FiniteCover)
            interval = KbInterval(IDENTITY, x)
            samples = [
                KbElement(n, m) for n in range(0, 3) for m in range(-15, 16)
            ]
            for g in samples:
                if interval.contains(g):
                    assert result.covers(g)

    def test_trivial_subgroup_segment(self):
        result = interval_coset_cover(KbElement(0, 3), KbSubgroup.trivial(), 10)
        assert isinstance(result, FiniteCover)
        assert len(result.cosets) == 4

    def test_requires_positive_top(self):
        with pytest.raises(ValueError):
            interval_coset_cover(IDENTITY, KbSubgroup.full(), 5)
        with pytest.raises(ValueError):
            interval_coset_cover(KbElement(-1, 0), KbSubgroup.full(), 5)
