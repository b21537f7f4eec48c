"""Reduced words over a countable free generating set, with abelianization.

Syllables are (generator index, nonzero exponent) pairs; a word is reduced
when adjacent syllables use distinct generators. The abelianization map
(exponent sums per generator) is the exact refutation oracle used by the
pattern machinery: it is a homomorphism and is invariant under conjugation,
so any membership claim it rules out is ruled out for good.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class FreeWord:
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for gen, exp in self.syllables:
            if gen < 0:
                raise ValueError("generator indices are naturals")
            if exp == 0:
                raise ValueError("zero exponent in a reduced word")
            if prev is not None and prev == gen:
                raise ValueError("adjacent syllables share a generator")
            prev = gen

    @staticmethod
    def identity() -> "FreeWord":
        return FreeWord(())

    @staticmethod
    def generator(index: int, exp: int = 1) -> "FreeWord":
        if exp == 0:
            return FreeWord(())
        return FreeWord(((index, exp),))

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def support(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return free_mul(self, other)

    def __pow__(self, k: int) -> "FreeWord":
        if k < 0:
            return free_inv(self) ** (-k)
        acc = FreeWord(())
        for _ in range(k):
            acc = free_mul(acc, self)
        return acc

    def __str__(self) -> str:
        if not self.syllables:
            return "e"
        return "*".join(
            f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in self.syllables
        )


def free_mul(u: FreeWord, v: FreeWord) -> FreeWord:
    """Reduced concatenation (free cancellation at the seam)."""
    out = list(u.syllables)
    for gen, exp in v.syllables:
        if out and out[-1][0] == gen:
            total = out[-1][1] + exp
            out.pop()
            if total:
                out.append((gen, total))
        else:
            out.append((gen, exp))
    return FreeWord(tuple(out))


def free_inv(u: FreeWord) -> FreeWord:
    """Reversed word with negated exponents."""
    return FreeWord(tuple((g, -e) for g, e in reversed(u.syllables)))


def free_product(words: Iterable[FreeWord]) -> FreeWord:
    acc = FreeWord(())
    for w in words:
        acc = free_mul(acc, w)
    return acc


def free_conjugate(u: FreeWord, by: FreeWord) -> FreeWord:
    """by^-1 * u * by."""
    return free_mul(free_mul(free_inv(by), u), by)


@dataclass(frozen=True)
class AbelianVector:
    """Finite map generator index -> exponent sum, stored sorted and nonzero."""

    coords: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def from_dict(values: dict[int, int]) -> "AbelianVector":
        return AbelianVector(tuple(sorted((g, v) for g, v in values.items() if v != 0)))

    def get(self, gen: int) -> int:
        for g, v in self.coords:
            if g == gen:
                return v
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.coords)

    def support(self) -> set[int]:
        return {g for g, _ in self.coords}

    def __add__(self, other: "AbelianVector") -> "AbelianVector":
        total = dict(self.coords)
        for g, v in other.coords:
            total[g] = total.get(g, 0) + v
        return AbelianVector.from_dict(total)

    def __neg__(self) -> "AbelianVector":
        return AbelianVector(tuple((g, -v) for g, v in self.coords))

    @property
    def is_zero(self) -> bool:
        return not self.coords


def abelianize(u: FreeWord) -> AbelianVector:
    """Exponent-sum vector; a conjugation-invariant homomorphism."""
    sums: dict[int, int] = {}
    for g, e in u.syllables:
        sums[g] = sums.get(g, 0) + e
    return AbelianVector.from_dict(sums)
