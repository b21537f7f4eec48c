"""Exact piecewise-linear order-automorphisms of the rationals.

A map is stored as finitely many breakpoints plus one affine piece
``t -> slope*t + intercept`` per region (two unbounded rays included).
Positive rational slopes and continuity make each map a strictly
increasing bijection of Q, and the class is closed under composition and
inverse, so it forms a group.

The group carries a left-invariant total order induced by a fixed
enumeration of Q (a well-order of type omega): ``f < g`` iff
``f(t0) < g(t0)`` at the first enumerated point t0 where the maps differ.
The enumeration is height-major: a reduced fraction p/q has height
max(|p|, q), heights are listed increasingly, and within one height
entries are sorted by (denominator, |numerator|, positive before
negative). It starts 0, 1, -1, 2, -2, 1/2, -1/2, ...

Membership of a map in the order-convex hull of a cyclic group <f> is
decided with certificates: two-sided power bounds for membership, and for
non-membership a fixed-point certificate, since a fixed point d of an
increasing bijection pins every orbit to one side of d for all integer
powers at once. Bounded search alone never justifies a non-membership
claim here.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Union

from .ordering import Cmp

DEFAULT_SEARCH_CAP = 10_000

RationalLike = Union[Fraction, int]


class SearchExhausted(RuntimeError):
    """No difference point found within the enumeration cap."""

    def __init__(self, cap: int):
        super().__init__(f"no difference found among the first {cap + 1} rationals")
        self.cap = cap


class RationalEnumeration:
    """Height-major bijection between the naturals and Q, with exact inverse."""

    def __init__(self) -> None:
        self._blocks: list[list[Fraction]] = []
        self._cumulative: list[int] = []
        self._rank_of: dict[Fraction, int] = {}

    def _add_block(self) -> None:
        h = len(self._blocks) + 1
        block: list[Fraction] = []
        for q in range(1, h + 1):
            if q < h:
                if math.gcd(h, q) == 1:
                    block.append(Fraction(h, q))
                    block.append(Fraction(-h, q))
            else:
                for p in range(0, h + 1):
                    if math.gcd(p, h) != 1:
                        continue
                    if p == 0:
                        block.append(Fraction(0))
                    else:
                        block.append(Fraction(p, h))
                        block.append(Fraction(-p, h))
        base = self._cumulative[-1] if self._cumulative else 0
        for offset, value in enumerate(block):
            self._rank_of[value] = base + offset
        self._blocks.append(block)
        self._cumulative.append(base + len(block))

    def _ensure_height(self, h: int) -> None:
        while len(self._blocks) < h:
            self._add_block()

    def _ensure_count(self, count: int) -> None:
        while not self._cumulative or self._cumulative[-1] < count:
            self._add_block()

    def rank(self, value: RationalLike) -> int:
        value = Fraction(value)
        self._ensure_height(max(abs(value.numerator), value.denominator))
        return self._rank_of[value]

    def unrank(self, index: int) -> Fraction:
        if index < 0:
            raise ValueError("rank must be a natural number")
        self._ensure_count(index + 1)
        block_idx = bisect.bisect_right(self._cumulative, index)
        base = self._cumulative[block_idx - 1] if block_idx > 0 else 0
        return self._blocks[block_idx][index - base]

    def first(self, count: int) -> list[Fraction]:
        return [self.unrank(i) for i in range(count)]


_ENUMERATION = RationalEnumeration()


def rank_rational(value: RationalLike) -> int:
    return _ENUMERATION.rank(value)


def unrank_rational(index: int) -> Fraction:
    return _ENUMERATION.unrank(index)


@dataclass(frozen=True)
class PlAut:
    """Piecewise-affine increasing bijection of Q in canonical form.

    ``slopes[i]``/``intercepts[i]`` apply on the i-th region cut out by the
    breakpoints; region 0 is the left ray. Adjacent regions with identical
    affine data are merged on construction, so structural equality is
    equality of maps.
    """

    breakpoints: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]
    intercepts: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bps = tuple(Fraction(b) for b in self.breakpoints)
        slopes = tuple(Fraction(s) for s in self.slopes)
        icpts = tuple(Fraction(c) for c in self.intercepts)
        if len(slopes) != len(bps) + 1 or len(icpts) != len(bps) + 1:
            raise ValueError("need exactly one affine piece per region")
        if any(s <= 0 for s in slopes):
            raise ValueError("slopes must be positive")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise ValueError("breakpoints must increase strictly")
        for i, b in enumerate(bps):
            if slopes[i] * b + icpts[i] != slopes[i + 1] * b + icpts[i + 1]:
                raise ValueError(f"discontinuity at breakpoint {b}")
        # canonical form: merge regions that carry the same affine map
        keep_bps: list[Fraction] = []
        keep_s: list[Fraction] = [slopes[0]]
        keep_c: list[Fraction] = [icpts[0]]
        for i, b in enumerate(bps):
            if slopes[i + 1] == keep_s[-1] and icpts[i + 1] == keep_c[-1]:
                continue
            keep_bps.append(b)
            keep_s.append(slopes[i + 1])
            keep_c.append(icpts[i + 1])
        object.__setattr__(self, "breakpoints", tuple(keep_bps))
        object.__setattr__(self, "slopes", tuple(keep_s))
        object.__setattr__(self, "intercepts", tuple(keep_c))

    @staticmethod
    def identity() -> "PlAut":
        return PlAut((), (Fraction(1),), (Fraction(0),))

    @staticmethod
    def translation(d: RationalLike) -> "PlAut":
        return PlAut((), (Fraction(1),), (Fraction(d),))

    @staticmethod
    def affine(slope: RationalLike, intercept: RationalLike) -> "PlAut":
        return PlAut((), (Fraction(slope),), (Fraction(intercept),))

    @staticmethod
    def through_points(
        anchors: Iterable[tuple[RationalLike, RationalLike]],
        left_slope: RationalLike = 1,
        right_slope: RationalLike = 1,
    ) -> "PlAut":
        """Interpolate increasing anchor pairs; the rays get the given slopes."""
        pts = [(Fraction(t), Fraction(v)) for t, v in anchors]
        if not pts:
            raise ValueError("need at least one anchor")
        bps = tuple(t for t, _ in pts)
        ls, rs = Fraction(left_slope), Fraction(right_slope)
        slopes = [ls]
        icpts = [pts[0][1] - ls * pts[0][0]]
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            s = (v1 - v0) / (t1 - t0)
            slopes.append(s)
            icpts.append(v0 - s * t0)
        slopes.append(rs)
        icpts.append(pts[-1][1] - rs * pts[-1][0])
        return PlAut(bps, tuple(slopes), tuple(icpts))

    def _piece(self, t: Fraction) -> tuple[Fraction, Fraction]:
        i = bisect.bisect_left(self.breakpoints, t)
        return self.slopes[i], self.intercepts[i]

    def apply(self, t: RationalLike) -> Fraction:
        t = Fraction(t)
        s, c = self._piece(t)
        return s * t + c

    __call__ = apply

    @property
    def is_identity(self) -> bool:
        return not self.breakpoints and self.slopes[0] == 1 and self.intercepts[0] == 0

    def __str__(self) -> str:
        if self.is_identity:
            return "id"
        pieces = ", ".join(f"{s}t+{c}" for s, c in zip(self.slopes, self.intercepts))
        return f"PL[{pieces} @ {self.breakpoints}]"


def plaut_apply(f: PlAut, t: RationalLike) -> Fraction:
    return f.apply(t)


def _region_samples(cuts: list[Fraction]) -> list[Fraction]:
    if not cuts:
        return [Fraction(0)]
    samples = [cuts[0] - 1]
    samples += [(a + b) / 2 for a, b in zip(cuts, cuts[1:])]
    samples.append(cuts[-1] + 1)
    return samples


def plaut_compose(f: PlAut, g: PlAut) -> PlAut:
    """The map t -> f(g(t))."""
    g_inv = plaut_inverse(g)
    cuts = sorted(set(g.breakpoints) | {g_inv.apply(b) for b in f.breakpoints})
    slopes: list[Fraction] = []
    icpts: list[Fraction] = []
    for t in _region_samples(cuts):
        sg, cg = g._piece(t)
        sf, cf = f._piece(sg * t + cg)
        slopes.append(sf * sg)
        icpts.append(sf * cg + cf)
    return PlAut(tuple(cuts), tuple(slopes), tuple(icpts))


def plaut_inverse(f: PlAut) -> PlAut:
    bps = tuple(f.apply(b) for b in f.breakpoints)
    slopes = tuple(1 / s for s in f.slopes)
    icpts = tuple(-c / s for s, c in zip(f.slopes, f.intercepts))
    return PlAut(bps, slopes, icpts)


def plaut_power(f: PlAut, k: int) -> PlAut:
    if k < 0:
        return plaut_power(plaut_inverse(f), -k)
    acc = PlAut.identity()
    base = f
    while k:
        if k & 1:
            acc = plaut_compose(acc, base)
        base = plaut_compose(base, base)
        k >>= 1
    return acc


def first_difference(f: PlAut, g: PlAut, search_cap: int = DEFAULT_SEARCH_CAP) -> Fraction:
    """The enumeration-first rational where f and g differ.

    Distinct maps in this class differ on a whole subinterval of Q, so the
    search succeeds for every genuinely distinct pair once the cap is large
    enough; equal maps (or too small a cap) raise SearchExhausted.
    """
    for i in range(search_cap + 1):
        t = unrank_rational(i)
        if f.apply(t) != g.apply(t):
            return t
    raise SearchExhausted(search_cap)


def plaut_compare(f: PlAut, g: PlAut, search_cap: int = DEFAULT_SEARCH_CAP) -> Cmp:
    """Well-order-induced comparison: value order at the first difference."""
    if f == g:
        return Cmp.EQ
    t = first_difference(f, g, search_cap)
    return Cmp.LT if f.apply(t) < g.apply(t) else Cmp.GT


def plaut_le(f: PlAut, g: PlAut, search_cap: int = DEFAULT_SEARCH_CAP) -> bool:
    return plaut_compare(f, g, search_cap) is not Cmp.GT


@dataclass(frozen=True)
class HullCounterexample:
    """Five marked rationals and two maps realizing the hull failure.

    a is the first point of the enumeration; f moves a to c while fixing d,
    g moves a to b and b to e. Then g lies between id and f, yet g*g is
    above every integer power of f, so the convex hull of <f> contains g
    but not g*g and is not a subgroup.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: PlAut
    g: PlAut


def hull_counterexample_build() -> HullCounterexample:
    a, b, c, d, e = (Fraction(v) for v in (0, 1, 2, 3, 4))
    f = PlAut.through_points([(0, 2), (3, 3)])     # t+2 low ray, t/3+2 middle, id high ray
    g = PlAut.through_points([(0, 1), (1, 4)])     # t+1 low ray, 3t+1 middle, t+3 high ray
    built = HullCounterexample(a, b, c, d, e, f, g)
    checks = (
        f.apply(a) == c,
        f.apply(d) == d,
        g.apply(a) == b,
        g.apply(b) == e,
        g.apply(g.apply(a)) == e,
        a == unrank_rational(0),
    )
    if not all(checks):
        raise AssertionError("constructed maps violate a defining constraint")
    return built


@dataclass(frozen=True)
class OrbitBoundCertificate:
    """Finite data implying f^k(start) stays on one side of a fixed point for all k.

    Soundness: an increasing bijection with f(d) = d maps each side of d
    onto itself, so the full two-sided orbit of any start on one side stays
    there. The sampled orbit values are a redundant spot check.
    """

    automorphism: PlAut
    start: Fraction
    fixed_point: Fraction
    side: str  # "below": f^k(start) < fixed_point for all k; "above": mirrored
    sample_radius: int
    fixed_point_is_fixed: bool
    start_on_claimed_side: bool
    slopes_all_positive: bool
    samples_within_bound: bool

    @property
    def valid(self) -> bool:
        return (
            self.fixed_point_is_fixed
            and self.start_on_claimed_side
            and self.slopes_all_positive
            and self.samples_within_bound
        )

    def to_jsonable(self) -> dict:
        return {
            "start": str(self.start),
            "fixed-point": str(self.fixed_point),
            "side": self.side,
            "sample-radius": self.sample_radius,
            "checks": {
                "fixed-point-is-fixed": self.fixed_point_is_fixed,
                "start-on-claimed-side": self.start_on_claimed_side,
                "slopes-all-positive": self.slopes_all_positive,
                "samples-within-bound": self.samples_within_bound,
            },
        }


def _orbit_samples_ok(f: PlAut, start: Fraction, bound: Fraction, radius: int, below: bool) -> bool:
    ok: Callable[[Fraction], bool] = (lambda v: v < bound) if below else (lambda v: v > bound)
    f_inv = plaut_inverse(f)
    t = start
    for _ in range(radius):
        t = f.apply(t)
        if not ok(t):
            return False
    t = start
    for _ in range(radius):
        t = f_inv.apply(t)
        if not ok(t):
            return False
    return ok(start)


def _build_orbit_certificate(
    f: PlAut, start: Fraction, fixed_point: Fraction, side: str, sample_radius: int
) -> OrbitBoundCertificate:
    return OrbitBoundCertificate(
        automorphism=f,
        start=start,
        fixed_point=fixed_point,
        side=side,
        sample_radius=sample_radius,
        fixed_point_is_fixed=f.apply(fixed_point) == fixed_point,
        start_on_claimed_side=(start < fixed_point) if side == "below" else (start > fixed_point),
        slopes_all_positive=all(s > 0 for s in f.slopes),
        samples_within_bound=_orbit_samples_ok(
            f, start, fixed_point, sample_radius, below=(side == "below")
        ),
    )


def orbit_bound_certificate(
    f: PlAut, start: RationalLike, fixed_point: RationalLike, sample_radius: int = 50
) -> OrbitBoundCertificate:
    """Certify f^k(start) < fixed_point for every integer k.

    Rejects inputs where fixed_point is not fixed or start is not strictly
    below it; the returned certificate is therefore always valid.
    """
    start, fixed_point = Fraction(start), Fraction(fixed_point)
    if f.apply(fixed_point) != fixed_point:
        raise ValueError(f"{fixed_point} is not a fixed point")
    if start >= fixed_point:
        raise ValueError("start must lie strictly below the fixed point")
    cert = _build_orbit_certificate(f, start, fixed_point, "below", sample_radius)
    if not cert.valid:
        raise AssertionError("certificate checks failed on admissible input")
    return cert


def _orbit_bound_certificate_above(
    f: PlAut, start: Fraction, fixed_point: Fraction, sample_radius: int = 50
) -> OrbitBoundCertificate:
    if f.apply(fixed_point) != fixed_point:
        raise ValueError(f"{fixed_point} is not a fixed point")
    if start <= fixed_point:
        raise ValueError("start must lie strictly above the fixed point")
    cert = _build_orbit_certificate(f, start, fixed_point, "above", sample_radius)
    if not cert.valid:
        raise AssertionError("certificate checks failed on admissible input")
    return cert


def fixed_value_between(f: PlAut, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    """Some fixed point of f in the half-open window (lo, hi], scanning pieces."""
    if hi <= lo:
        return None
    regions = len(f.slopes)
    for i in range(regions):
        left = f.breakpoints[i - 1] if i > 0 else None
        right = f.breakpoints[i] if i < len(f.breakpoints) else None
        s, c = f.slopes[i], f.intercepts[i]
        if s == 1 and c == 0:
            upper = hi if right is None else min(hi, right)
            if left is not None and left > lo:
                if left <= upper:
                    return left
            elif upper > lo:
                return (lo + upper) / 2
        elif s != 1:
            t_star = c / (1 - s)
            if (left is None or left <= t_star) and (right is None or t_star <= right):
                if lo < t_star <= hi:
                    return t_star
    return None


def _fixed_value_between_mirror(f: PlAut, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    """Some fixed point of f in [lo, hi), preferring values near hi."""
    if hi <= lo:
        return None
    for i in reversed(range(len(f.slopes))):
        left = f.breakpoints[i - 1] if i > 0 else None
        right = f.breakpoints[i] if i < len(f.breakpoints) else None
        s, c = f.slopes[i], f.intercepts[i]
        if s == 1 and c == 0:
            lower = lo if left is None else max(lo, left)
            if right is not None and right < hi:
                if right >= lower:
                    return right
            elif lower < hi:
                return (lower + hi) / 2
        elif s != 1:
            t_star = c / (1 - s)
            if (left is None or left <= t_star) and (right is None or t_star <= right):
                if lo <= t_star < hi:
                    return t_star
    return None


@dataclass(frozen=True)
class HullIn:
    """Power bounds: f^k_lo <= g <= f^k_hi in the well-order comparison."""

    k_lo: int
    k_hi: int


@dataclass(frozen=True)
class HullEscapeCertificate:
    """Proof that g stays strictly on one side of every power of f.

    At the enumeration-first point t0 the orbit of t0 under f is pinned by
    a fixed point d (the orbit certificate), while g(t0) lies at or beyond
    d. Hence every power differs from g already at t0, in the same
    direction, so no power of f bounds g on that side.
    """

    orbit: OrbitBoundCertificate
    first_point: Fraction
    query_value: Fraction
    direction: str  # "above-all-powers" or "below-all-powers"

    @property
    def valid(self) -> bool:
        if not self.orbit.valid or self.orbit.start != self.first_point:
            return False
        if self.direction == "above-all-powers":
            return self.orbit.side == "below" and self.orbit.fixed_point <= self.query_value
        return self.orbit.side == "above" and self.orbit.fixed_point >= self.query_value

    def to_jsonable(self) -> dict:
        return {
            "direction": self.direction,
            "first-point": str(self.first_point),
            "query-value": str(self.query_value),
            "orbit": self.orbit.to_jsonable(),
        }


@dataclass(frozen=True)
class HullNotIn:
    certificate: HullEscapeCertificate


@dataclass(frozen=True)
class HullUnknown:
    reason: str


HullVerdict = Union[HullIn, HullNotIn, HullUnknown]


def hull_of_cyclic_membership(
    f: PlAut,
    g: PlAut,
    k_range: int = 8,
    search_cap: int = DEFAULT_SEARCH_CAP,
) -> HullVerdict:
    """Decide membership of g in the order-convex hull of the powers of f.

    Membership needs a sandwich f^k_lo <= g <= f^k_hi, searched for
    |k| <= k_range. Non-membership is only ever reported with a fixed-point
    certificate showing g stays strictly beyond every power of f at the
    enumeration-first point. Anything else is Unknown.
    """
    if f.is_identity:
        raise ValueError("the cyclic group must be generated by a non-identity map")
    powers = {k: plaut_power(f, k) for k in range(-k_range, k_range + 1)}
    lower = [k for k in powers if plaut_le(powers[k], g, search_cap)]
    upper = [k for k in powers if plaut_le(g, powers[k], search_cap)]
    if lower and upper:
        # powers are order-monotone in k, increasing iff id < f
        increasing = plaut_compare(PlAut.identity(), f, search_cap) is Cmp.LT
        k_lo = max(lower) if increasing else min(lower)
        k_hi = min(upper) if increasing else max(upper)
        return HullIn(k_lo, k_hi)
    t0 = unrank_rational(0)
    g_t0 = g.apply(t0)
    if not upper:
        d = fixed_value_between(f, t0, g_t0)
        if d is not None:
            orbit = orbit_bound_certificate(f, t0, d)
            cert = HullEscapeCertificate(orbit, t0, g_t0, "above-all-powers")
            if cert.valid:
                return HullNotIn(cert)
    if not lower:
        d = _fixed_value_between_mirror(f, g_t0, t0)
        if d is not None:
            orbit = _orbit_bound_certificate_above(f, t0, d)
            cert = HullEscapeCertificate(orbit, t0, g_t0, "below-all-powers")
            if cert.valid:
                return HullNotIn(cert)
    missing = "upper" if not upper else "lower"
    return HullUnknown(
        f"no {missing} power bound within |k| <= {k_range} and no pinning fixed point"
    )
