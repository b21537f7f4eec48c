"""Finite-depth verifier for inconsistency patterns over definable sets.

A pattern instance is an array of rows; each row is a finite family of
parameterized cells claimed to be k-inconsistent (no element lies in k of
them), and every path through the grid (one chosen column per row) must be
satisfiable by a common element. The verifier returns Verified only when
both halves are backed by exact evidence: a per-row disjointness
certificate that can be re-checked, and a per-path witness element that is
re-validated through set membership. Failure to prove something is
reported as Unknown, never silently upgraded.

Two builders produce the instances of interest: a depth-2 pattern on the
Klein bottle group (disjoint intervals around powers of x crossed with the
right cosets of <x> by powers of y), and a depth-(n+1) pattern on a free
group whose cells pin the exponent of one generator inside a product of
power families, where 2-inconsistency is certified by abelianization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Sequence, Union

from .defsets import (
    ConjClosureSet,
    ContextMismatch,
    CosetSet,
    DefSet,
    Element,
    GeneratorPowers,
    IntervalSet,
    Membership,
    ProductSet,
    SetPower,
    SingletonSet,
    abelian_box,
    defset_membership,
    defset_to_jsonable,
    element_to_jsonable,
    membership_to_jsonable,
)
from .klein import KbElement, KbSubgroup
from .ordering import KbInterval, RightCoset, interval_construct
from .words import FreeWord, abelianize, free_product


@dataclass(frozen=True)
class Row:
    """One pattern row: a labelled family of cells with its inconsistency bound."""

    label: str
    params: tuple
    cells: tuple[DefSet, ...]
    k: int = 2

    def __post_init__(self) -> None:
        if len(self.params) != len(self.cells):
            raise ValueError("one parameter per cell")
        if len(set(self.params)) != len(self.params):
            raise ValueError("row parameters must be pairwise distinct")
        if self.k < 2:
            raise ValueError("inconsistency bound must be at least 2")


@dataclass(frozen=True)
class PatternInstance:
    rows: tuple[Row, ...]
    witness_hints: Mapping[tuple[int, ...], Element] = field(default_factory=dict)
    ict: bool = False

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("a pattern needs at least one row")
        if any(len(r.cells) < 2 for r in self.rows):
            raise ValueError("every row needs at least two columns")

    @property
    def depth(self) -> int:
        return len(self.rows)

    def shape(self) -> tuple[int, ...]:
        return tuple(len(r.cells) for r in self.rows)

    def grid(self):
        return itertools.product(*(range(len(r.cells)) for r in self.rows))

    def restricted(
        self, rows: Optional[int] = None, cols: Optional[int] = None
    ) -> "PatternInstance":
        """Sub-instance on the first ``rows`` rows and ``cols`` columns."""
        rows = self.depth if rows is None else rows
        new_rows = tuple(
            Row(r.label, r.params[:cols], r.cells[:cols], r.k) for r in self.rows[:rows]
        )
        hints: dict[tuple[int, ...], Element] = {}
        for eta, w in self.witness_hints.items():
            head = eta[:rows]
            if all(head[i] < len(new_rows[i].cells) for i in range(rows)):
                hints.setdefault(head, w)
        return PatternInstance(new_rows, hints, self.ict)


class CheckStatus(Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RowCertificate:
    """Re-checkable evidence that a row is k-inconsistent."""

    row_index: int
    method: str  # disjoint-intervals | distinct-cosets | abelian-separation
    payload: tuple

    def to_jsonable(self) -> dict:
        return {"row": self.row_index, "method": self.method, "payload": list(self.payload)}


@dataclass(frozen=True)
class RowCheck:
    status: CheckStatus
    certificate: Optional[RowCertificate] = None
    element: Optional[Element] = None
    cells: tuple[int, ...] = ()
    note: str = ""


def _intervals_of(row: Row) -> Optional[list[KbInterval]]:
    if all(isinstance(c, IntervalSet) for c in row.cells):
        return [c.interval for c in row.cells]
    return None


def _cosets_of(row: Row) -> Optional[list[RightCoset]]:
    if all(isinstance(c, CosetSet) for c in row.cells):
        cosets = [c.coset for c in row.cells]
        if len({c.subgroup for c in cosets}) == 1:
            return cosets
    return None


def _interval_disjoint_cert(row: Row, row_index: int) -> Optional[RowCertificate]:
    intervals = _intervals_of(row)
    if intervals is None:
        return None
    order = sorted(range(len(intervals)), key=lambda i: tuple(intervals[i].lo))
    for a, b in zip(order, order[1:]):
        if not intervals[a].is_disjoint_from(intervals[b]):
            return None
    payload = tuple(
        (list(intervals[i].lo), list(intervals[i].hi)) for i in order
    )
    return RowCertificate(row_index, "disjoint-intervals", payload)


def _coset_distinct_cert(row: Row, row_index: int) -> Optional[RowCertificate]:
    cosets = _cosets_of(row)
    if cosets is None:
        return None
    reps = [c.canonical_rep for c in cosets]
    if len(set(reps)) != len(reps):
        return None
    payload = tuple((str(cosets[0].subgroup), list(r)) for r in reps)
    return RowCertificate(row_index, "distinct-cosets", payload)


def _bounds_disjoint(a: tuple, b: tuple) -> bool:
    lo1, hi1 = a
    lo2, hi2 = b
    before = hi1 is not None and lo2 is not None and hi1 < lo2
    after = hi2 is not None and lo1 is not None and hi2 < lo1
    return before or after


def _abelian_separation_cert(row: Row, row_index: int) -> Optional[RowCertificate]:
    try:
        boxes = [abelian_box(c) for c in row.cells]
    except ContextMismatch:
        return None
    gens = sorted(set().union(*(set(b) for b in boxes)))
    for gen in gens:
        bounds = [b.get(gen, (0, 0)) for b in boxes]
        if all(
            _bounds_disjoint(bounds[i], bounds[j])
            for i in range(len(bounds))
            for j in range(i + 1, len(bounds))
        ):
            payload = tuple((gen, list(bd)) for bd in bounds)
            return RowCertificate(row_index, "abelian-separation", payload)
    return None


def recheck_row_certificate(cert: RowCertificate, row: Row) -> bool:
    """Re-derive the certificate's claim from the row's own cells."""
    fresh = None
    if cert.method == "disjoint-intervals":
        fresh = _interval_disjoint_cert(row, cert.row_index)
    elif cert.method == "distinct-cosets":
        fresh = _coset_distinct_cert(row, cert.row_index)
    elif cert.method == "abelian-separation":
        fresh = _abelian_separation_cert(row, cert.row_index)
    return fresh is not None


def _search_row_refutation(
    row: Row, box_radius: int
) -> Optional[tuple[Element, tuple[int, ...]]]:
    """An element lying in k cells of the row, if one can be found."""
    k = row.k
    for combo in itertools.combinations(range(len(row.cells)), k):
        cells = [row.cells[i] for i in combo]
        candidate = _common_element(cells, box_radius)
        if candidate is None:
            continue
        if all(defset_membership(c, candidate).is_member for c in cells):
            return candidate, combo
    return None


def _common_element(cells: Sequence[DefSet], box_radius: int) -> Optional[Element]:
    if all(isinstance(c, IntervalSet) for c in cells):
        common: Optional[KbInterval] = None
        for c in cells:
            common = c.interval if common is None else common.intersect(c.interval)
            if common is None:
                return None
        return common.midpoint()
    if all(isinstance(c, CosetSet) for c in cells):
        reps = {c.coset.canonical_rep for c in cells}
        if len(reps) == 1 and len({c.coset.subgroup for c in cells}) == 1:
            return next(iter(reps))
        return None
    # free-group cells: a point of the abelian-box intersection, if the
    # boxes meet; validated by the caller through real membership
    try:
        boxes = [abelian_box(c) for c in cells]
    except ContextMismatch:
        return None
    gens = sorted(set().union(*(set(b) for b in boxes)))
    exponents: dict[int, int] = {}
    for gen in gens:
        lo: Optional[int] = None
        hi: Optional[int] = None
        for b in boxes:
            l2, h2 = b.get(gen, (0, 0))
            lo = l2 if lo is None else (lo if l2 is None else max(lo, l2))
            hi = h2 if hi is None else (hi if h2 is None else min(hi, h2))
        if lo is not None and hi is not None and lo > hi:
            return None
        exponents[gen] = lo if lo is not None else (hi if hi is not None else 0)
    return free_product(FreeWord.generator(g, e) for g, e in sorted(exponents.items()))


def row_inconsistency_check(row: Row, row_index: int = 0, box_radius: int = 24) -> RowCheck:
    """Certify k-inconsistency exactly, or refute it with a co-satisfying element.

    Pairwise disjointness of the cells is certified by interval endpoints,
    canonical coset representatives, or abelianization separation, and it
    implies k-inconsistency for every k >= 2. When no certificate is found
    a refuting element is searched for; if neither materializes the row is
    honestly Unknown.
    """
    cert = (
        _interval_disjoint_cert(row, row_index)
        or _coset_distinct_cert(row, row_index)
        or _abelian_separation_cert(row, row_index)
    )
    if cert is not None:
        return RowCheck(CheckStatus.CERTIFIED, certificate=cert)
    found = _search_row_refutation(row, box_radius)
    if found is not None:
        element, cells = found
        return RowCheck(CheckStatus.REFUTED, element=element, cells=cells)
    return RowCheck(CheckStatus.UNKNOWN, note="no certificate and no refuting element found")


class VerdictStatus(Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Refutation:
    kind: str  # failed-row | unsatisfiable-path | negation-violated
    detail: str
    row_index: Optional[int] = None
    eta: Optional[tuple[int, ...]] = None
    element: Optional[Element] = None


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    witnesses: Mapping[tuple[int, ...], Element] = field(default_factory=dict)
    row_certificates: tuple[RowCertificate, ...] = ()
    refutation: Optional[Refutation] = None
    pending: tuple[str, ...] = ()

    @property
    def is_verified(self) -> bool:
        return self.status is VerdictStatus.VERIFIED


def _pair_provably_disjoint(a: DefSet, b: DefSet) -> bool:
    probe = Row("pair", (0, 1), (a, b), 2)
    cert = (
        _interval_disjoint_cert(probe, 0)
        or _coset_distinct_cert(probe, 0)
        or _abelian_separation_cert(probe, 0)
    )
    return cert is not None


def _search_path_witness(
    cells: Sequence[DefSet], box_radius: int
) -> Optional[Element]:
    candidate = _common_element(cells, box_radius)
    if candidate is not None and all(
        defset_membership(c, candidate).is_member for c in cells
    ):
        return candidate
    if all(isinstance(c, (IntervalSet, CosetSet)) for c in cells):
        for n in range(-box_radius, box_radius + 1):
            for m in range(-box_radius, box_radius + 1):
                g = KbElement(n, m)
                if all(defset_membership(c, g).is_member for c in cells):
                    return g
    return None


def verify_pattern(
    pattern: PatternInstance, box_radius: int = 24, search_bound: int = 64
) -> Verdict:
    """Check every row bound and every grid path, with certificates throughout.

    Verified requires every row Certified and every path witnessed by an
    element re-validated through ``defset_membership`` on each chosen cell
    (hints first, bounded search as fallback). A path with two provably
    disjoint chosen cells refutes the pattern. With the ict flag the
    witness must additionally avoid every non-chosen cell of each row,
    which is only decidable for exact cells.
    """
    certificates: list[RowCertificate] = []
    pending: list[str] = []
    for i, row in enumerate(pattern.rows):
        check = row_inconsistency_check(row, i, box_radius)
        if check.status is CheckStatus.REFUTED:
            return Verdict(
                VerdictStatus.REFUTED,
                refutation=Refutation(
                    "failed-row",
                    f"row {i} has an element in {len(check.cells)} cells",
                    row_index=i,
                    element=check.element,
                ),
            )
        if check.status is CheckStatus.UNKNOWN:
            pending.append(f"row {i}: {check.note}")
        else:
            certificates.append(check.certificate)

    witnesses: dict[tuple[int, ...], Element] = {}
    for eta in pattern.grid():
        chosen = [pattern.rows[i].cells[j] for i, j in enumerate(eta)]
        witness = pattern.witness_hints.get(tuple(eta))
        if witness is not None and not all(
            defset_membership(c, witness, search_bound).is_member for c in chosen
        ):
            witness = None
        if witness is None:
            witness = _search_path_witness(chosen, box_radius)
        if witness is None:
            for a in range(len(chosen)):
                for b in range(a + 1, len(chosen)):
                    if _pair_provably_disjoint(chosen[a], chosen[b]):
                        return Verdict(
                            VerdictStatus.REFUTED,
                            refutation=Refutation(
                                "unsatisfiable-path",
                                f"path {eta}: chosen cells of rows {a} and {b} are disjoint",
                                eta=tuple(eta),
                            ),
                        )
            pending.append(f"path {eta}: no witness found")
            continue
        if pattern.ict:
            violation = _ict_negation_check(pattern, eta, witness, search_bound)
            if isinstance(violation, Refutation):
                return Verdict(VerdictStatus.REFUTED, refutation=violation)
            pending.extend(violation)
        witnesses[tuple(eta)] = witness

    if pending:
        return Verdict(
            VerdictStatus.UNKNOWN,
            witnesses=witnesses,
            row_certificates=tuple(certificates),
            pending=tuple(pending),
        )
    return Verdict(
        VerdictStatus.VERIFIED,
        witnesses=witnesses,
        row_certificates=tuple(certificates),
    )


def _ict_negation_check(
    pattern: PatternInstance,
    eta: Sequence[int],
    witness: Element,
    search_bound: int,
) -> Union[Refutation, list[str]]:
    pending: list[str] = []
    for i, row in enumerate(pattern.rows):
        for j, cell in enumerate(row.cells):
            if j == eta[i]:
                continue
            result = defset_membership(cell, witness, search_bound)
            if result.is_member:
                return Refutation(
                    "negation-violated",
                    f"path {tuple(eta)}: witness also lies in row {i} cell {j}",
                    row_index=i,
                    eta=tuple(eta),
                    element=witness,
                )
            if result.is_unknown:
                pending.append(f"path {tuple(eta)}: negation at row {i} cell {j} undecided")
    return pending


def build_kb_depth2(n_cols: int, j_cols: int) -> PatternInstance:
    """Depth-2 instance on the Klein bottle group.

    Row 0 holds the pairwise disjoint intervals around x^k for k < n_cols,
    each wide enough to meet the cosets <x>*y^j for all j < j_cols; row 1
    holds those cosets. The path (k, j) is witnessed by x^k y^j.
    """
    if n_cols < 2 or j_cols < 2:
        raise ValueError("both column counts must be at least 2")
    span = j_cols - 1
    intervals = tuple(
        IntervalSet(interval_construct(span, k)[0]) for k in range(n_cols)
    )
    axis = KbSubgroup.cyclic_x(1)
    cosets = tuple(
        CosetSet(RightCoset(axis, KbElement(0, j))) for j in range(j_cols)
    )
    rows = (
        Row("intervals around x-powers", tuple(range(n_cols)), intervals, 2),
        Row("<x> cosets by y-powers", tuple(range(j_cols)), cosets, 2),
    )
    hints = {
        (k, j): KbElement(k, j) for k in range(n_cols) for j in range(j_cols)
    }
    return PatternInstance(rows, hints)


def build_free_chain_pattern(n: int, cols: int) -> PatternInstance:
    """Depth-(n+1) instance on the free group over generators 0..n.

    Cell (i, j) is the product D_0 ... D_(i-1) {x_i^(j+1)} D_(i+1) ... D_n
    with D_l the nonnegative powers of x_l; the path eta is witnessed by
    the product of the pinned generator powers. Rows are 2-inconsistent
    because co-membership forces equal exponent sums at generator i.
    """
    if n < 1:
        raise ValueError("depth parameter must be at least 1")
    if cols < 2:
        raise ValueError("need at least two columns")
    indices = range(n + 1)

    def cell(i: int, j: int) -> ProductSet:
        factors: list[DefSet] = []
        for l in indices:
            if l == i:
                factors.append(SingletonSet(FreeWord.generator(i, j + 1)))
            else:
                factors.append(GeneratorPowers(l))
        return ProductSet(tuple(factors))

    rows = tuple(
        Row(
            f"pinned exponent of generator {i}",
            tuple(FreeWord.generator(i, j + 1) for j in range(cols)),
            tuple(cell(i, j) for j in range(cols)),
            2,
        )
        for i in indices
    )
    hints = {
        eta: free_product(FreeWord.generator(i, eta[i] + 1) for i in indices)
        for eta in itertools.product(range(cols), repeat=n + 1)
    }
    return PatternInstance(rows, hints)


@dataclass(frozen=True)
class ChainNonMembership:
    """Certificate that x_i^(m0-m1) misses the 2n-fold conjugate-closure product.

    Every element of ((D_0 ... without D_i ... D_n)^G)^(2n) has exponent
    sum 0 at generator i (the omitted generator cannot re-enter through
    products or conjugation), while the quotient element has exponent sum
    m0 - m1 != 0 there.
    """

    n: int
    i: int
    m0: int
    m1: int
    gap: int
    target: DefSet
    element: FreeWord
    membership: Membership

    @property
    def valid(self) -> bool:
        return (
            self.gap == self.m0 - self.m1
            and self.gap != 0
            and self.membership.is_non_member
            and self.membership.certificate is not None
            and self.membership.certificate.get("generator") == self.i
            and abelianize(self.element).get(self.i) == self.gap
        )

    def to_jsonable(self) -> dict:
        return {
            "n": self.n,
            "i": self.i,
            "m0": self.m0,
            "m1": self.m1,
            "gap": self.gap,
            "element": element_to_jsonable(self.element),
            "membership": membership_to_jsonable(self.membership),
        }


def chain_nonmembership_certificate(n: int, i: int, m0: int, m1: int) -> ChainNonMembership:
    """Exact non-membership of x_i^m0 * x_i^-m1 in ((prod of D_l, l != i)^G)^(2n)."""
    if not 0 <= i <= n:
        raise ValueError("generator index out of range")
    if m0 == m1:
        raise ValueError("the two exponents must differ")
    others = tuple(GeneratorPowers(l) for l in range(n + 1) if l != i)
    inner: DefSet = ProductSet(others) if others else SingletonSet(FreeWord.identity())
    target = SetPower(ConjClosureSet(inner), 2 * n)
    element = FreeWord.generator(i, m0 - m1)
    membership = defset_membership(target, element)
    cert = ChainNonMembership(n, i, m0, m1, m0 - m1, target, element, membership)
    if not cert.valid:
        raise AssertionError("expected an abelianization refutation")
    return cert


def pattern_to_jsonable(pattern: PatternInstance) -> dict:
    return {
        "depth": pattern.depth,
        "shape": list(pattern.shape()),
        "ict": pattern.ict,
        "rows": [
            {
                "label": r.label,
                "k": r.k,
                "params": [
                    element_to_jsonable(p) if isinstance(p, (KbElement, FreeWord)) else p
                    for p in r.params
                ],
                "cells": [defset_to_jsonable(c) for c in r.cells],
            }
            for r in pattern.rows
        ],
    }


def verdict_to_jsonable(verdict: Verdict) -> dict:
    out: dict = {
        "status": verdict.status.value,
        "row-certificates": [c.to_jsonable() for c in verdict.row_certificates],
        "witnesses": {
            ",".join(map(str, eta)): element_to_jsonable(w)
            for eta, w in sorted(verdict.witnesses.items())
        },
    }
    if verdict.refutation is not None:
        r = verdict.refutation
        out["refutation"] = {
            "kind": r.kind,
            "detail": r.detail,
            "row": r.row_index,
            "eta": list(r.eta) if r.eta is not None else None,
            "element": element_to_jsonable(r.element) if r.element is not None else None,
        }
    if verdict.pending:
        out["pending"] = list(verdict.pending)
    return out
