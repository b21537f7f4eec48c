from random import Random

from leftorder.klein import KbElement, kb_mul
from leftorder.presburger import PresburgerInterpretation, presburger_interpretation


def test_frozen_product_example():
    model = presburger_interpretation()
    lhs = model.op(model.iso(KbElement(1, 2)), model.iso(KbElement(3, 5)))
    assert lhs == model.iso(kb_mul(KbElement(1, 2), KbElement(3, 5))) == (4, 3)


def test_zero_pair_is_neutral():
    model = presburger_interpretation()
    for pair in [(0, 0), (5, -3), (-2, 7)]:
        assert model.op((0, 0), pair) == pair
        assert model.op(pair, (0, 0)) == pair


def test_random_sample_has_no_violation():
    model = presburger_interpretation()
    assert model.check_random(2000, 10**9, Random(3)) is None


def test_checker_reports_first_violating_pair():
    broken = PresburgerInterpretation(
        carrier="broken on purpose",
        op=lambda u, v: (u[0] + v[0], u[1] + v[1]),  # ignores the parity twist
        iso=lambda g: (g.n, g.m),
    )
    pairs = [
        (KbElement(0, 1), KbElement(2, 0)),  # even shift: still fine
        (KbElement(0, 1), KbElement(1, 0)),  # odd shift: first violation
        (KbElement(0, 2), KbElement(1, 0)),
    ]
    assert broken.first_violation(pairs) == (KbElement(0, 1), KbElement(1, 0))
    assert presburger_interpretation().first_violation(pairs) is None
