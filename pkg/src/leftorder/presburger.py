"""A copy of the Klein bottle group definable over (Z, <, +).

The carrier is Z x Z and the operation is
``(a, b) (+) (c, d) = (a + c, d + eps(c) * b)`` where eps(c) is +1 for even
c and -1 for odd c. The only non-linear ingredient is the parity case
split, and evenness is definable in (Z, <, +) since 2Z is a definable
subgroup. The identity map on coordinate pairs is an isomorphism from the
normal-form group onto this structure; the checker verifies that equation
on any supplied sample and reports the first violating pair.

This particular definable copy is one choice among many; nothing below
depends on which definable copy is used, only on the displayed operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Callable, Optional

from .klein import KbElement, kb_mul

Pair = tuple[int, int]


def _parity_op(u: Pair, v: Pair) -> Pair:
    a, b = u
    c, d = v
    return (a + c, d + (b if c % 2 == 0 else -b))


def _identity_iso(g: KbElement) -> Pair:
    return (g.n, g.m)


@dataclass(frozen=True)
class PresburgerInterpretation:
    """Carrier description, pair operation, and the comparison ``iso``."""

    carrier: str
    op: Callable[[Pair, Pair], Pair] = field(compare=False)
    iso: Callable[[KbElement], Pair] = field(compare=False)

    def check_pair(self, g: KbElement, h: KbElement) -> bool:
        return self.iso(kb_mul(g, h)) == self.op(self.iso(g), self.iso(h))

    def first_violation(
        self, pairs: list[tuple[KbElement, KbElement]]
    ) -> Optional[tuple[KbElement, KbElement]]:
        """The first pair where iso(g*h) != iso(g) (+) iso(h), if any."""
        for g, h in pairs:
            if not self.check_pair(g, h):
                return (g, h)
        return None

    def check_random(
        self, count: int, magnitude: int, rng: Random
    ) -> Optional[tuple[KbElement, KbElement]]:
        randint = rng.randint
        for _ in range(count):
            g = KbElement(randint(-magnitude, magnitude), randint(-magnitude, magnitude))
            h = KbElement(randint(-magnitude, magnitude), randint(-magnitude, magnitude))
            if not self.check_pair(g, h):
                return (g, h)
        return None


def presburger_interpretation() -> PresburgerInterpretation:
    return PresburgerInterpretation(
        carrier="Z x Z with (a,b)(+)(c,d) = (a+c, d + eps(c)*b), eps(c) = +1 iff c even",
        op=_parity_op,
        iso=_identity_iso,
    )
