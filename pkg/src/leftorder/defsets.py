"""Expression trees for definable subsets of the two groups in play.

Leaves are intervals, right cosets and singletons on the integer-pair side,
and generator-power families ``{x_i^m}`` and singletons on the free-group
side; products, conjugate closures, set powers and one-sided translates
combine them.

Membership evaluation is three-valued. Interval, coset, singleton and
translate chains over them are exact. For free-group composites the sound
refutation route is the abelianization box: every node has an exactly
computed per-generator interval of achievable exponent sums (conjugation
preserves exponent sums, products add them), so a value outside the box is
a certificate of non-membership. Positive answers come with an explicit
factorization found by bounded search, and anything else is Unknown rather
than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Union

from .klein import KbElement, kb_inv, kb_mul
from .ordering import KbInterval, RightCoset
from .words import FreeWord, abelianize, free_conjugate, free_inv, free_mul

Element = Union[KbElement, FreeWord]

DEFAULT_SEARCH_BOUND = 64


@dataclass(frozen=True)
class IntervalSet:
    interval: KbInterval


@dataclass(frozen=True)
class CosetSet:
    coset: RightCoset


@dataclass(frozen=True)
class SingletonSet:
    element: Element


@dataclass(frozen=True)
class GeneratorPowers:
    """The family {x_gen^m : min_exp <= m <= max_exp}; max_exp None = unbounded."""

    gen: int
    min_exp: int = 0
    max_exp: Optional[int] = None


@dataclass(frozen=True)
class TranslateSet:
    inner: "DefSet"
    element: Element
    side: str = "left"  # left: a*S, right: S*a

    def __post_init__(self) -> None:
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")


@dataclass(frozen=True)
class ProductSet:
    factors: tuple["DefSet", ...]


@dataclass(frozen=True)
class ConjClosureSet:
    inner: "DefSet"


@dataclass(frozen=True)
class SetPower:
    inner: "DefSet"
    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("set power must be a natural number")


DefSet = Union[
    IntervalSet,
    CosetSet,
    SingletonSet,
    GeneratorPowers,
    TranslateSet,
    ProductSet,
    ConjClosureSet,
    SetPower,
]


class ContextMismatch(TypeError):
    """Element and set live over different groups."""


def defset_context(s: DefSet) -> Optional[str]:
    """'kb', 'free', or None when the tree does not pin a group down."""
    if isinstance(s, (IntervalSet, CosetSet)):
        return "kb"
    if isinstance(s, GeneratorPowers):
        return "free"
    if isinstance(s, SingletonSet):
        return "kb" if isinstance(s.element, KbElement) else "free"
    if isinstance(s, TranslateSet):
        inner = defset_context(s.inner)
        own = "kb" if isinstance(s.element, KbElement) else "free"
        if inner is not None and inner != own:
            raise ContextMismatch("translate mixes group contexts")
        return own
    if isinstance(s, ProductSet):
        ctx = None
        for f in s.factors:
            sub = defset_context(f)
            if sub is None:
                continue
            if ctx is None:
                ctx = sub
            elif ctx != sub:
                raise ContextMismatch("product mixes group contexts")
        return ctx
    return defset_context(s.inner)  # ConjClosureSet, SetPower


class MemberStatus(Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Membership:
    status: MemberStatus
    witness: Optional[tuple] = None
    certificate: Optional[dict] = None
    note: str = ""

    @property
    def is_member(self) -> bool:
        return self.status is MemberStatus.MEMBER

    @property
    def is_non_member(self) -> bool:
        return self.status is MemberStatus.NON_MEMBER

    @property
    def is_unknown(self) -> bool:
        return self.status is MemberStatus.UNKNOWN


def _member(witness: Optional[tuple] = None) -> Membership:
    return Membership(MemberStatus.MEMBER, witness=witness)


def _non_member(certificate: dict) -> Membership:
    return Membership(MemberStatus.NON_MEMBER, certificate=certificate)


def _unknown(note: str) -> Membership:
    return Membership(MemberStatus.UNKNOWN, note=note)


# abelianization boxes: per-generator intervals of achievable exponent sums

Bound = Optional[int]
Box = dict[int, tuple[Bound, Bound]]


def _box_add(a: Box, b: Box) -> Box:
    # generators absent from one side contribute the exact value 0 there
    out: Box = dict(a)
    for gen, (lo2, hi2) in b.items():
        lo1, hi1 = out.get(gen, (0, 0))
        out[gen] = (
            None if lo1 is None or lo2 is None else lo1 + lo2,
            None if hi1 is None or hi2 is None else hi1 + hi2,
        )
    return out


def _box_scale(a: Box, k: int) -> Box:
    if k == 0:
        return {}
    return {
        gen: (None if lo is None else lo * k, None if hi is None else hi * k)
        for gen, (lo, hi) in a.items()
    }


def abelian_box(s: DefSet) -> Box:
    """Exact per-generator exponent-sum intervals of a free-context set."""
    if isinstance(s, (IntervalSet, CosetSet)):
        raise ContextMismatch("integer-pair sets have no abelianization box")
    if isinstance(s, SingletonSet):
        if not isinstance(s.element, FreeWord):
            raise ContextMismatch("integer-pair sets have no abelianization box")
        return {g: (v, v) for g, v in abelianize(s.element).coords}
    if isinstance(s, GeneratorPowers):
        return {s.gen: (s.min_exp, s.max_exp)}
    if isinstance(s, TranslateSet):
        return _box_add(abelian_box(s.inner), abelian_box(SingletonSet(s.element)))
    if isinstance(s, ProductSet):
        box: Box = {}
        for f in s.factors:
            box = _box_add(box, abelian_box(f))
        return box
    if isinstance(s, ConjClosureSet):
        return abelian_box(s.inner)
    return _box_scale(abelian_box(s.inner), s.count)


def _box_excludes(box: Box, g: FreeWord) -> Optional[dict]:
    """A violated generator constraint, as a certificate payload, or None."""
    values = abelianize(g).as_dict()
    for gen in sorted(set(box) | set(values)):
        lo, hi = box.get(gen, (0, 0))
        v = values.get(gen, 0)
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            return {
                "kind": "abelian-box",
                "generator": gen,
                "exponent-sum": v,
                "allowed-low": lo,
                "allowed-high": hi,
            }
    return None


def _candidate_factors(s: DefSet, g: FreeWord, bound: int) -> Optional[list[FreeWord]]:
    """Enumerable prefixes to try for one product factor; None = not enumerable."""
    if isinstance(s, SingletonSet):
        return [s.element] if isinstance(s.element, FreeWord) else None
    if isinstance(s, GeneratorPowers):
        hi = bound if s.max_exp is None else min(s.max_exp, bound)
        lo = max(s.min_exp, -bound)
        if lo > hi:
            return []
        cands: list[int] = []
        if g.syllables and g.syllables[0][0] == s.gen:
            lead = g.syllables[0][1]
            if lo <= lead <= hi:
                cands.append(lead)
        for m in range(lo, hi + 1):
            if m not in cands:
                cands.append(m)
        return [FreeWord.generator(s.gen, m) for m in cands]
    return None


_SEARCH_NODE_BUDGET = 20_000


def _product_search(
    factors: tuple[DefSet, ...], g: FreeWord, bound: int, budget: list[int]
) -> Optional[list[FreeWord]]:
    if budget[0] <= 0:
        return None
    budget[0] -= 1
    if not factors:
        return [] if g.is_identity else None
    head, rest = factors[0], factors[1:]
    candidates = _candidate_factors(head, g, bound)
    if candidates is None:
        return None
    for u in candidates:
        tail = _product_search(rest, free_mul(free_inv(u), g), bound, budget)
        if tail is not None:
            return [u] + tail
    return None


def _conjugator_ball(g: FreeWord, box: Box) -> Iterator[FreeWord]:
    yield FreeWord.identity()
    gens = sorted(g.support() | set(box))
    for i in gens:
        yield FreeWord.generator(i, 1)
        yield FreeWord.generator(i, -1)


def defset_membership(s: DefSet, g: Element, search_bound: int = DEFAULT_SEARCH_BOUND) -> Membership:
    """Three-valued membership with witnesses and certificates.

    Exact on interval/coset/singleton/translate chains; on free-group
    composites a NON_MEMBER verdict always carries an abelianization-box
    certificate and a MEMBER verdict an explicit factorization.
    """
    ctx = defset_context(s)
    if ctx == "kb" and not isinstance(g, KbElement):
        raise ContextMismatch("integer-pair set queried with a free word")
    if ctx == "free" and not isinstance(g, FreeWord):
        raise ContextMismatch("free-group set queried with an integer pair")

    if isinstance(s, IntervalSet):
        if s.interval.contains(g):
            return _member((g,))
        return _non_member(
            {
                "kind": "interval-bounds",
                "lo": list(s.interval.lo),
                "hi": list(s.interval.hi),
                "element": list(g),
            }
        )
    if isinstance(s, CosetSet):
        diff = kb_mul(g, kb_inv(s.coset.rep))
        if s.coset.subgroup.contains(diff):
            return _member((diff, s.coset.rep))
        return _non_member(
            {
                "kind": "coset-difference",
                "difference": list(diff),
                "subgroup": str(s.coset.subgroup),
            }
        )
    if isinstance(s, SingletonSet):
        if g == s.element:
            return _member((g,))
        return _non_member({"kind": "singleton-mismatch"})
    if isinstance(s, GeneratorPowers):
        sylls = g.syllables
        if not sylls:
            exp = 0
        elif len(sylls) == 1 and sylls[0][0] == s.gen:
            exp = sylls[0][1]
        else:
            return _non_member(
                {"kind": "not-a-generator-power", "generator": s.gen}
            )
        lo, hi = s.min_exp, s.max_exp
        if exp >= lo and (hi is None or exp <= hi):
            return _member((g,))
        return _non_member(
            {"kind": "exponent-out-of-range", "generator": s.gen, "exponent": exp}
        )
    if isinstance(s, TranslateSet):
        if isinstance(g, KbElement):
            shifted = (
                kb_mul(kb_inv(s.element), g) if s.side == "left" else kb_mul(g, kb_inv(s.element))
            )
        else:
            shifted = (
                free_mul(free_inv(s.element), g)
                if s.side == "left"
                else free_mul(g, free_inv(s.element))
            )
        return defset_membership(s.inner, shifted, search_bound)

    # composite free-group sets: box refutation first, then bounded search
    if ctx == "free":
        box = abelian_box(s)
        violation = _box_excludes(box, g)
        if violation is not None:
            return _non_member(violation)

    if isinstance(s, ProductSet):
        if ctx == "free":
            factors = _product_search(s.factors, g, search_bound, [_SEARCH_NODE_BUDGET])
            if factors is not None:
                return _member(tuple(factors))
            return _unknown("no factorization found within the search bound")
        return _unknown("product over integer-pair sets is not searchable")
    if isinstance(s, ConjClosureSet):
        if ctx != "free":
            return _unknown("conjugate closure only searched over free words")
        for w in _conjugator_ball(g, abelian_box(s.inner)):
            inner = defset_membership(s.inner, free_conjugate(g, free_inv(w)), search_bound)
            if inner.is_member:
                return _member((w,) + (inner.witness or ()))
        return _unknown("no conjugator found within the search ball")
    if isinstance(s, SetPower):
        if s.count == 0:
            identity: Element = FreeWord.identity() if ctx == "free" else KbElement(0, 0)
            return defset_membership(SingletonSet(identity), g, search_bound)
        return defset_membership(ProductSet((s.inner,) * s.count), g, search_bound)
    raise TypeError(f"unhandled set node {type(s).__name__}")


def defset_to_jsonable(s: DefSet) -> dict:
    if isinstance(s, IntervalSet):
        return {"type": "interval", "lo": list(s.interval.lo), "hi": list(s.interval.hi)}
    if isinstance(s, CosetSet):
        return {
            "type": "right-coset",
            "subgroup": str(s.coset.subgroup),
            "rep": list(s.coset.rep),
        }
    if isinstance(s, SingletonSet):
        return {"type": "singleton", "element": element_to_jsonable(s.element)}
    if isinstance(s, GeneratorPowers):
        return {
            "type": "generator-powers",
            "generator": s.gen,
            "min-exp": s.min_exp,
            "max-exp": s.max_exp,
        }
    if isinstance(s, TranslateSet):
        return {
            "type": "translate",
            "side": s.side,
            "element": element_to_jsonable(s.element),
            "inner": defset_to_jsonable(s.inner),
        }
    if isinstance(s, ProductSet):
        return {"type": "product", "factors": [defset_to_jsonable(f) for f in s.factors]}
    if isinstance(s, ConjClosureSet):
        return {"type": "conjugate-closure", "inner": defset_to_jsonable(s.inner)}
    return {"type": "set-power", "count": s.count, "inner": defset_to_jsonable(s.inner)}


def element_to_jsonable(g: Element) -> Union[list, dict]:
    if isinstance(g, KbElement):
        return [g.n, g.m]
    return {"word": [[gen, exp] for gen, exp in g.syllables]}


def membership_to_jsonable(m: Membership) -> dict:
    out: dict = {"status": m.status.value}
    if m.witness is not None:
        out["witness"] = [element_to_jsonable(w) if isinstance(w, (KbElement, FreeWord)) else str(w) for w in m.witness]
    if m.certificate is not None:
        out["certificate"] = m.certificate
    if m.note:
        out["note"] = m.note
    return out
