"""Exact arithmetic in the Klein bottle group ``<x, y | x^-1 y x = y^-1>``.

Every element has a unique normal form ``x^n y^m`` with unbounded integer
exponents, so elements are plain integer pairs and all operations are exact.
The multiplication formula is cross-checked against an independent oracle:
the faithful affine action ``(u, v) -> (u + n, (-1)^n v + m)`` on integer
pairs, whose composition law can be read off directly.

Also here: the small intersection-closed family of subgroups needed by the
order and pattern machinery (the full group, the trivial subgroup, the axis
subgroups ``<x^p>`` and ``<y^q>``, and the rank-2 lattices
``{x^(pn) y^(qm)}``), with exact membership, intersection and index
computations in normal-form coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from random import Random
from typing import Iterator, NamedTuple, Union


class KbElement(NamedTuple):
    """Normal form x^n y^m; equality and hashing are componentwise."""

    n: int
    m: int

    def __str__(self) -> str:
        if self.n == 0 and self.m == 0:
            return "e"
        parts = []
        if self.n != 0:
            parts.append(f"x^{self.n}" if self.n != 1 else "x")
        if self.m != 0:
            parts.append(f"y^{self.m}" if self.m != 1 else "y")
        return "*".join(parts)


IDENTITY = KbElement(0, 0)


def _parity_sign(n: int) -> int:
    return -1 if n & 1 else 1


def kb_mul(a: KbElement, b: KbElement) -> KbElement:
    """Product in normal form: (x^n y^m)(x^n' y^m') = x^(n+n') y^(m' + (-1)^n' m)."""
    return KbElement(a.n + b.n, b.m + _parity_sign(b.n) * a.m)


def kb_inv(a: KbElement) -> KbElement:
    """Inverse in normal form: (x^n y^m)^-1 = x^-n y^((-1)^(n+1) m)."""
    return KbElement(-a.n, _parity_sign(a.n + 1) * a.m)


def kb_pow(a: KbElement, k: int) -> KbElement:
    """k-fold product, via square and multiply; negative k through the inverse."""
    if k < 0:
        return kb_pow(kb_inv(a), -k)
    acc = IDENTITY
    base = a
    while k:
        if k & 1:
            acc = kb_mul(acc, base)
        base = kb_mul(base, base)
        k >>= 1
    return acc


def kb_conjugate(g: KbElement, by: KbElement) -> KbElement:
    """by^-1 * g * by."""
    return kb_mul(kb_mul(kb_inv(by), g), by)


def kb_centralizer_membership(g: KbElement, h: KbElement) -> bool:
    """True iff g and h commute."""
    return kb_mul(g, h) == kb_mul(h, g)


class AffineAction(NamedTuple):
    """The map (u, v) -> (u + shift, sign*v + offset) on integer pairs.

    Composition of two such maps is again one, which makes the class an
    independent oracle for the normal-form multiplication: the element
    x^n y^m acts by shift=n, sign=(-1)^n, offset=m, and applying the action
    of ``a`` followed by the action of ``b`` realizes the product ``a*b``.
    """

    shift: int
    sign: int
    offset: int

    @classmethod
    def of(cls, g: KbElement) -> "AffineAction":
        return cls(g.n, _parity_sign(g.n), g.m)

    def apply(self, u: int, v: int) -> tuple[int, int]:
        return (u + self.shift, self.sign * v + self.offset)

    def then(self, other: "AffineAction") -> "AffineAction":
        """The action 'self first, then other'."""
        return AffineAction(
            self.shift + other.shift,
            self.sign * other.sign,
            other.sign * self.offset + other.offset,
        )

    def to_element(self) -> KbElement:
        if self.sign != _parity_sign(self.shift):
            raise ValueError("action is not induced by a group element")
        return KbElement(self.shift, self.offset)


class SubgroupKind(Enum):
    FULL = "full"
    TRIVIAL = "trivial"
    CYCLIC_X = "cyclic-x"
    CYCLIC_Y = "cyclic-y"
    LATTICE = "lattice"


@dataclass(frozen=True)
class KbSubgroup:
    """A member of the intersection-closed subgroup family.

    cyclic_x(p) = {x^(pn)}, cyclic_y(q) = {y^(qm)},
    lattice(p, q) = {x^(pn) y^(qm)}; lattice(1, 1) normalizes to the full
    group so that equality of values is equality of subgroups.
    """

    kind: SubgroupKind
    p: int = 0
    q: int = 0

    @staticmethod
    def full() -> "KbSubgroup":
        return KbSubgroup(SubgroupKind.FULL)

    @staticmethod
    def trivial() -> "KbSubgroup":
        return KbSubgroup(SubgroupKind.TRIVIAL)

    @staticmethod
    def cyclic_x(p: int) -> "KbSubgroup":
        if p <= 0:
            raise ValueError("step must be positive")
        return KbSubgroup(SubgroupKind.CYCLIC_X, p=p)

    @staticmethod
    def cyclic_y(q: int) -> "KbSubgroup":
        if q <= 0:
            raise ValueError("step must be positive")
        return KbSubgroup(SubgroupKind.CYCLIC_Y, q=q)

    @staticmethod
    def lattice(p: int, q: int) -> "KbSubgroup":
        if p <= 0 or q <= 0:
            raise ValueError("steps must be positive")
        if p == 1 and q == 1:
            return KbSubgroup.full()
        return KbSubgroup(SubgroupKind.LATTICE, p=p, q=q)

    def contains(self, g: KbElement) -> bool:
        if self.kind is SubgroupKind.FULL:
            return True
        if self.kind is SubgroupKind.TRIVIAL:
            return g == IDENTITY
        if self.kind is SubgroupKind.CYCLIC_X:
            return g.m == 0 and g.n % self.p == 0
        if self.kind is SubgroupKind.CYCLIC_Y:
            return g.n == 0 and g.m % self.q == 0
        return g.n % self.p == 0 and g.m % self.q == 0

    @property
    def is_trivial(self) -> bool:
        return self.kind is SubgroupKind.TRIVIAL

    def is_central(self) -> bool:
        """True iff every member commutes with the whole group."""
        if self.kind is SubgroupKind.TRIVIAL:
            return True
        if self.kind is SubgroupKind.CYCLIC_X:
            return self.p % 2 == 0
        return False

    def coset_rep(self, g: KbElement) -> KbElement:
        """Canonical representative of the right coset H*g.

        Two elements lie in the same right coset iff their canonical
        representatives are equal, which makes coset distinctness exact.
        """
        if self.kind is SubgroupKind.FULL:
            return IDENTITY
        if self.kind is SubgroupKind.TRIVIAL:
            return g
        if self.kind is SubgroupKind.CYCLIC_X:
            return KbElement(g.n % self.p, g.m)
        if self.kind is SubgroupKind.CYCLIC_Y:
            return KbElement(g.n, g.m % self.q)
        return KbElement(g.n % self.p, g.m % self.q)

    def members(self) -> Iterator[KbElement]:
        """Enumerate the subgroup in a spiral (finite prefix of an infinite group)."""
        if self.kind is SubgroupKind.TRIVIAL:
            yield IDENTITY
            return
        if self.kind is SubgroupKind.CYCLIC_X:
            for t in _integer_spiral():
                yield KbElement(self.p * t, 0)
        elif self.kind is SubgroupKind.CYCLIC_Y:
            for t in _integer_spiral():
                yield KbElement(0, self.q * t)
        else:
            p = self.p if self.kind is SubgroupKind.LATTICE else 1
            q = self.q if self.kind is SubgroupKind.LATTICE else 1
            for a, b in _pair_spiral():
                yield KbElement(p * a, q * b)

    def __str__(self) -> str:
        if self.kind is SubgroupKind.FULL:
            return "G"
        if self.kind is SubgroupKind.TRIVIAL:
            return "1"
        if self.kind is SubgroupKind.CYCLIC_X:
            return f"<x^{self.p}>" if self.p != 1 else "<x>"
        if self.kind is SubgroupKind.CYCLIC_Y:
            return f"<y^{self.q}>" if self.q != 1 else "<y>"
        return f"<x^{self.p}, y^{self.q}>"


def _integer_spiral() -> Iterator[int]:
    yield 0
    t = 1
    while True:
        yield t
        yield -t
        t += 1


def _pair_spiral() -> Iterator[tuple[int, int]]:
    radius = 0
    while True:
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                if max(abs(a), abs(b)) == radius:
                    yield (a, b)
        radius += 1


def kb_center_description() -> KbSubgroup:
    """The center of the group, which is the even-power axis {x^(2n)}."""
    return KbSubgroup.cyclic_x(2)


def y_centralizer() -> KbSubgroup:
    """The centralizer of y, the index-2 abelian subgroup {x^(2n) y^m}."""
    return KbSubgroup.lattice(2, 1)


def subgroup_intersect(h: KbSubgroup, k: KbSubgroup) -> KbSubgroup:
    """Exact intersection; the family is closed under it."""
    if h.kind is SubgroupKind.TRIVIAL or k.kind is SubgroupKind.TRIVIAL:
        return KbSubgroup.trivial()
    if h.kind is SubgroupKind.FULL:
        return k
    if k.kind is SubgroupKind.FULL:
        return h
    a, b = sorted((h, k), key=lambda s: s.kind.value)
    if a.kind is SubgroupKind.CYCLIC_X:
        if b.kind is SubgroupKind.CYCLIC_X:
            return KbSubgroup.cyclic_x(math.lcm(a.p, b.p))
        if b.kind is SubgroupKind.CYCLIC_Y:
            return KbSubgroup.trivial()
        return KbSubgroup.cyclic_x(math.lcm(a.p, b.p))
    if a.kind is SubgroupKind.CYCLIC_Y:
        if b.kind is SubgroupKind.CYCLIC_Y:
            return KbSubgroup.cyclic_y(math.lcm(a.q, b.q))
        return KbSubgroup.cyclic_y(math.lcm(a.q, b.q))
    return KbSubgroup.lattice(math.lcm(a.p, b.p), math.lcm(a.q, b.q))


Index = Union[int, float]  # a natural number, or math.inf


def subgroup_index(h: KbSubgroup, j: KbSubgroup) -> Index:
    """[H : J] for J a family member contained in H; math.inf when infinite."""
    if not _subgroup_leq(j, h):
        raise ValueError(f"{j} is not contained in {h}")
    if h == j:
        return 1
    if h.kind is SubgroupKind.TRIVIAL:
        return 1
    if j.kind is SubgroupKind.TRIVIAL:
        return math.inf
    hk, jk = h.kind, j.kind
    if hk is SubgroupKind.FULL:
        if jk is SubgroupKind.LATTICE:
            return j.p * j.q
        return math.inf  # an axis subgroup misses a whole direction
    if hk is SubgroupKind.LATTICE:
        if jk is SubgroupKind.LATTICE:
            return (j.p // h.p) * (j.q // h.q)
        return math.inf
    if hk is SubgroupKind.CYCLIC_X:
        return j.p // h.p
    return j.q // h.q


def _subgroup_leq(j: KbSubgroup, h: KbSubgroup) -> bool:
    if j.kind is SubgroupKind.TRIVIAL or h.kind is SubgroupKind.FULL:
        return True
    if j.kind is SubgroupKind.FULL:
        return False
    if h.kind is SubgroupKind.TRIVIAL:
        return False
    if j.kind is SubgroupKind.CYCLIC_X:
        if h.kind is SubgroupKind.CYCLIC_X:
            return j.p % h.p == 0
        if h.kind is SubgroupKind.LATTICE:
            return j.p % h.p == 0
        return False
    if j.kind is SubgroupKind.CYCLIC_Y:
        if h.kind is SubgroupKind.CYCLIC_Y:
            return j.q % h.q == 0
        if h.kind is SubgroupKind.LATTICE:
            return j.q % h.q == 0
        return False
    # j lattice
    return h.kind is SubgroupKind.LATTICE and j.p % h.p == 0 and j.q % h.q == 0


def index_pair_check(h: KbSubgroup, k: KbSubgroup) -> tuple[Index, Index]:
    """([H : H&K], [K : H&K]) by coset counting in normal-form coordinates."""
    j = subgroup_intersect(h, k)
    return (subgroup_index(h, j), subgroup_index(k, j))


def distinct_coset_representatives(
    h: KbSubgroup, j: KbSubgroup, count: int, scan_limit: int = 100_000
) -> list[KbElement]:
    """``count`` elements of H lying in pairwise distinct right J-cosets.

    Evidence generator for infinite indices; raises if H runs out of fresh
    cosets within the scan limit (the index then was finite and smaller).
    """
    reps: list[KbElement] = []
    seen: set[KbElement] = set()
    for scanned, g in enumerate(h.members()):
        key = j.coset_rep(g)
        if key not in seen:
            seen.add(key)
            reps.append(g)
            if len(reps) == count:
                return reps
        if scanned >= scan_limit:
            raise ValueError(f"only {len(reps)} distinct cosets found in {scan_limit} members")
    raise ValueError("subgroup enumeration ended unexpectedly")


def random_element(rng: Random, magnitude: int) -> KbElement:
    return KbElement(rng.randint(-magnitude, magnitude), rng.randint(-magnitude, magnitude))


def random_axiom_audit(samples: int, magnitude: int, rng: Random) -> dict[str, int]:
    """Failure counts for the group axioms and the affine-action oracle.

    Draws ``samples`` random triples with exponents up to ``magnitude`` and
    checks associativity, identity, inverses, agreement of the normal-form
    product with affine-action composition, and that every square lands in
    the centralizer of y.
    """
    failures = {
        "associativity": 0,
        "identity": 0,
        "inverse": 0,
        "affine-oracle": 0,
        "square-in-y-centralizer": 0,
    }
    cy = y_centralizer()
    randint = rng.randint
    for _ in range(samples):
        a = KbElement(randint(-magnitude, magnitude), randint(-magnitude, magnitude))
        b = KbElement(randint(-magnitude, magnitude), randint(-magnitude, magnitude))
        c = KbElement(randint(-magnitude, magnitude), randint(-magnitude, magnitude))
        ab = kb_mul(a, b)
        if kb_mul(ab, c) != kb_mul(a, kb_mul(b, c)):
            failures["associativity"] += 1
        if kb_mul(a, IDENTITY) != a or kb_mul(IDENTITY, a) != a:
            failures["identity"] += 1
        if kb_mul(a, kb_inv(a)) != IDENTITY or kb_mul(kb_inv(a), a) != IDENTITY:
            failures["inverse"] += 1
        if AffineAction.of(a).then(AffineAction.of(b)).to_element() != ab:
            failures["affine-oracle"] += 1
        if not cy.contains(kb_mul(a, a)):
            failures["square-in-y-centralizer"] += 1
    return failures
