import pytest
from hypothesis import given, strategies as st

from leftorder.words import (
    AbelianVector,
    FreeWord,
    abelianize,
    free_conjugate,
    free_inv,
    free_mul,
    free_product,
)


def gen(i, e=1):
    return FreeWord.generator(i, e)


syllable_lists = st.lists(
    st.tuples(st.integers(0, 4), st.integers(-3, 3).filter(bool)), max_size=8
)
words = syllable_lists.map(
    lambda sylls: free_product(gen(g, e) for g, e in sylls)
)


class TestReduction:
    def test_cancellation_at_seam(self):
        left = free_mul(gen(0), gen(1))
        right = free_mul(gen(1, -1), gen(2))
        assert free_mul(left, right) == free_mul(gen(0), gen(2))

    def test_identity_neutral(self):
        u = free_mul(gen(0, 2), gen(3, -1))
        assert free_mul(FreeWord.identity(), u) == u
        assert free_mul(u, FreeWord.identity()) == u

    def test_syllable_merge(self):
        assert free_mul(gen(0, 2), gen(0, 3)) == gen(0, 5)

    def test_invalid_words_rejected(self):
        with pytest.raises(ValueError):
            FreeWord(((0, 0),))
        with pytest.raises(ValueError):
            FreeWord(((1, 2), (1, 3)))

    @given(words, words, words)
    def test_associative(self, u, v, w):
        assert free_mul(free_mul(u, v), w) == free_mul(u, free_mul(v, w))

    @given(words)
    def test_inverse_cancels(self, u):
        assert free_mul(u, free_inv(u)) == FreeWord.identity()
        assert free_inv(free_inv(u)) == u


class TestInverseExamples:
    def test_reverse_and_negate(self):
        u = free_mul(gen(0), gen(1, 2))
        assert free_inv(u) == free_mul(gen(1, -2), gen(0, -1))

    def test_identity(self):
        assert free_inv(FreeWord.identity()) == FreeWord.identity()

    def test_single_syllable(self):
        assert free_inv(gen(2, -3)) == gen(2, 3)


class TestAbelianize:
    def test_commutator_vanishes(self):
        u = free_product([gen(0), gen(1), gen(0, -1), gen(1, -1)])
        assert abelianize(u).is_zero

    def test_single_generator(self):
        assert abelianize(gen(3, 5)) == AbelianVector.from_dict({3: 5})

    def test_mixed_word(self):
        u = free_product([gen(0, 2), gen(1, -1), gen(0)])
        assert abelianize(u).as_dict() == {0: 3, 1: -1}

    @given(words, words)
    def test_homomorphism(self, u, v):
        assert abelianize(free_mul(u, v)) == abelianize(u) + abelianize(v)

    @given(words)
    def test_inverse_negates(self, u):
        assert abelianize(free_inv(u)) == -abelianize(u)

    @given(words, words)
    def test_conjugation_invariant(self, u, by):
        assert abelianize(free_conjugate(u, by)) == abelianize(u)
