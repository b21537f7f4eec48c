"""The lexicographic left-order on the Klein bottle group and its geometry.

``x^n y^m <= x^n' y^m'`` iff n < n', or n = n' and m <= m'. The order is
invariant under left multiplication but not under right multiplication
(right-multiplying by an odd power of x flips the sign of the y exponent).

On top of the order: closed intervals, right cosets of the subgroup family,
cofinality witnesses inside a coset, and the interval covering question for
right cosets of a subgroup. Covering an initial interval [e, x] with
finitely many cosets of a central subgroup fails here as soon as x has a
positive x-exponent, and `interval_coset_cover` returns that failure as a
lazily generated family of interval elements in pairwise distinct cosets,
each emitted with an exact distinctness certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable, Iterator, Union

from .klein import (
    IDENTITY,
    KbElement,
    KbSubgroup,
    SubgroupKind,
    kb_inv,
    kb_mul,
)


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def kb_compare(a: KbElement, b: KbElement) -> Cmp:
    """Lexicographic comparison of normal forms."""
    if a.n != b.n:
        return Cmp.LT if a.n < b.n else Cmp.GT
    if a.m != b.m:
        return Cmp.LT if a.m < b.m else Cmp.GT
    return Cmp.EQ


def kb_lt(a: KbElement, b: KbElement) -> bool:
    return kb_compare(a, b) is Cmp.LT


def kb_le(a: KbElement, b: KbElement) -> bool:
    return kb_compare(a, b) is not Cmp.GT


@dataclass(frozen=True)
class KbInterval:
    """Closed interval [lo, hi] in the lexicographic order."""

    lo: KbElement
    hi: KbElement

    def __post_init__(self) -> None:
        if kb_lt(self.hi, self.lo):
            raise ValueError("interval endpoints out of order")

    def contains(self, g: KbElement) -> bool:
        return kb_le(self.lo, g) and kb_le(g, self.hi)

    def intersect(self, other: "KbInterval") -> "KbInterval | None":
        lo = self.lo if kb_le(other.lo, self.lo) else other.lo
        hi = self.hi if kb_le(self.hi, other.hi) else other.hi
        if kb_le(lo, hi):
            return KbInterval(lo, hi)
        return None

    def is_disjoint_from(self, other: "KbInterval") -> bool:
        return self.intersect(other) is None

    def midpoint(self) -> KbElement:
        """Some element of the interval, roughly in the middle."""
        if self.lo.n == self.hi.n:
            return KbElement(self.lo.n, (self.lo.m + self.hi.m) // 2)
        cand = KbElement((self.lo.n + self.hi.n) // 2, 0)
        if kb_lt(cand, self.lo):
            return self.lo
        if kb_lt(self.hi, cand):
            return self.hi
        return cand

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class RightCoset:
    """The set H*rep = {h*rep : h in H}."""

    subgroup: KbSubgroup
    rep: KbElement

    def contains(self, g: KbElement) -> bool:
        return self.subgroup.contains(kb_mul(g, kb_inv(self.rep)))

    @property
    def canonical_rep(self) -> KbElement:
        return self.subgroup.coset_rep(self.rep)

    def same_coset(self, other: "RightCoset") -> bool:
        return self.subgroup == other.subgroup and self.canonical_rep == other.canonical_rep

    def __str__(self) -> str:
        return f"{self.subgroup}*{self.rep}"


def coset_membership(c: RightCoset, g: KbElement) -> bool:
    """True iff g * rep^-1 lies in the subgroup."""
    return c.contains(g)


def interval_construct(span: int, xpower: int) -> tuple[KbInterval, list[KbElement]]:
    """The interval [x^k, x^k y^span] around x^k (k = xpower), with witnesses.

    Witness j is x^k y^j, which lies in the right coset <x>*y^j; intervals
    built at distinct xpower values are pairwise disjoint because all their
    members share the x-exponent xpower.
    """
    if span < 0:
        raise ValueError("span must be a natural number")
    interval = KbInterval(KbElement(xpower, 0), KbElement(xpower, span))
    witnesses = [KbElement(xpower, j) for j in range(span + 1)]
    return interval, witnesses


class CofinalityError(ValueError):
    """No element of the coset exceeds the bound (degenerate or off-hull input)."""


def _member_above(h: KbSubgroup, bound: KbElement) -> KbElement:
    """Some element of h strictly above bound; CofinalityError when none exists."""
    kind = h.kind
    if kind is SubgroupKind.FULL:
        return KbElement(bound.n + 1, 0)
    if kind in (SubgroupKind.CYCLIC_X, SubgroupKind.LATTICE):
        return KbElement(h.p * (bound.n // h.p + 1), 0)
    if kind is SubgroupKind.CYCLIC_Y:
        if bound.n < 0:
            return KbElement(0, 0)
        if bound.n == 0:
            return KbElement(0, h.q * (bound.m // h.q + 1))
        raise CofinalityError(f"{h} is bounded above by {bound}")
    raise CofinalityError("trivial subgroup has no cofinal cosets")


def _member_below(h: KbSubgroup, c: KbElement) -> KbElement:
    """Some element of h strictly below c; CofinalityError when none exists."""
    kind = h.kind
    if kind is SubgroupKind.FULL:
        return KbElement(c.n - 1, 0)
    if kind in (SubgroupKind.CYCLIC_X, SubgroupKind.LATTICE):
        return KbElement(h.p * ((c.n - 1) // h.p), 0)
    if kind is SubgroupKind.CYCLIC_Y:
        if c.n > 0:
            return KbElement(0, 0)
        if c.n == 0:
            return KbElement(0, h.q * ((c.m - 1) // h.q))
        raise CofinalityError(f"no element of {h} lies below {c}")
    raise CofinalityError("trivial subgroup has no cofinal cosets")


def coset_cofinal_witness(h: KbSubgroup, c: KbElement, bound: KbElement) -> KbElement:
    """An element of H*c strictly greater than bound.

    Built the way left-invariance dictates: pick h1 in H strictly below c
    and h0 in H at or above bound, then h0*h1^-1*c lies in H*c and exceeds
    h0. Requires bound to be reachable from H (inside the convex span of
    H in the relevant direction); otherwise CofinalityError.
    """
    if h.is_trivial:
        raise CofinalityError("trivial subgroup: the coset is a single point")
    if kb_lt(bound, c):
        return c
    h1 = _member_below(h, c)
    h0 = _member_above(h, bound)
    witness = kb_mul(kb_mul(h0, kb_inv(h1)), c)
    assert kb_lt(bound, witness)
    return witness


@dataclass(frozen=True)
class FiniteCover:
    cosets: tuple[RightCoset, ...]

    def covers(self, g: KbElement) -> bool:
        return any(c.contains(g) for c in self.cosets)


@dataclass(frozen=True)
class InfiniteWitness:
    """Interval elements in pairwise distinct right cosets, generated lazily.

    ``take(count)`` re-validates each emitted element: it must lie in the
    interval and its canonical coset representative must be fresh.
    """

    subgroup: KbSubgroup
    interval: KbInterval
    generator: Callable[[], Iterator[KbElement]] = field(compare=False)

    def take(self, count: int) -> list[KbElement]:
        out: list[KbElement] = []
        seen: set[KbElement] = set()
        for g in self.generator():
            if not self.interval.contains(g):
                raise AssertionError(f"witness {g} escapes {self.interval}")
            key = self.subgroup.coset_rep(g)
            if key in seen:
                raise AssertionError(f"witness {g} repeats a coset")
            seen.add(key)
            out.append(g)
            if len(out) == count:
                return out
        raise AssertionError("witness generator ended early")


CoverResult = Union[FiniteCover, InfiniteWitness]


def interval_coset_cover(x: KbElement, h: KbSubgroup, budget: int) -> CoverResult:
    """Cover [e, x] by right H-cosets, or witness that no finite cover exists.

    The cover is computed in closed form from the normal-form coordinates,
    so a FiniteCover is always the minimal one (it is returned even if it
    exceeds ``budget``; the budget caps nothing in the closed-form cases).
    When x has positive x-exponent and H concentrates on the x-axis (the
    trivial subgroup or any <x^p>, in particular every central subgroup),
    the interval meets infinitely many cosets and an InfiniteWitness is
    returned: the elements y^b for b = 0, 1, 2, ... all lie in [e, x] and
    in pairwise distinct cosets.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    if not kb_lt(IDENTITY, x):
        raise ValueError("interval top must be positive")
    interval = KbInterval(IDENTITY, x)
    kind = h.kind
    if kind is SubgroupKind.FULL:
        return FiniteCover((RightCoset(h, IDENTITY),))
    if x.n == 0:
        # the interval is the finite y-segment {y^t : 0 <= t <= x.m}
        if kind in (SubgroupKind.TRIVIAL, SubgroupKind.CYCLIC_X):
            reps = [KbElement(0, t) for t in range(x.m + 1)]
        else:
            q = h.q
            reps = [KbElement(0, t) for t in range(min(q, x.m + 1))]
        return FiniteCover(tuple(RightCoset(h, r) for r in reps))
    if kind in (SubgroupKind.TRIVIAL, SubgroupKind.CYCLIC_X):
        def family() -> Iterator[KbElement]:
            for b in itertools.count():
                yield KbElement(0, b)

        return InfiniteWitness(h, interval, family)
    # <y^q> or a lattice: finitely many cosets meet the interval
    q = h.q
    if kind is SubgroupKind.CYCLIC_Y:
        slices = range(x.n + 1)
    else:
        slices = range(min(h.p, x.n + 1))
    reps = [KbElement(a, r) for a in slices for r in range(q)]
    return FiniteCover(tuple(RightCoset(h, r) for r in reps))
