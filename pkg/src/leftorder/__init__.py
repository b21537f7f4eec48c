"""Exact witnesses for order and inconsistency-pattern phenomena in groups.

Three concrete carriers: the Klein bottle group in normal form with its
lexicographic left-order, increasing piecewise-linear bijections of Q under
a well-order-induced comparison, and free groups with the abelianization
oracle. On top of them: definable-set expressions, a certificate-producing
verifier for finite inconsistency patterns, and CLI demos.
"""

from .klein import (
    IDENTITY,
    AffineAction,
    KbElement,
    KbSubgroup,
    index_pair_check,
    kb_center_description,
    kb_centralizer_membership,
    kb_inv,
    kb_mul,
    kb_pow,
    subgroup_intersect,
    y_centralizer,
)
from .ordering import (
    Cmp,
    CofinalityError,
    FiniteCover,
    InfiniteWitness,
    KbInterval,
    RightCoset,
    coset_cofinal_witness,
    coset_membership,
    interval_construct,
    interval_coset_cover,
    kb_compare,
)
from .words import AbelianVector, FreeWord, abelianize, free_inv, free_mul
from .presburger import PresburgerInterpretation, presburger_interpretation
from .plaut import (
    HullIn,
    HullNotIn,
    HullUnknown,
    OrbitBoundCertificate,
    PlAut,
    SearchExhausted,
    first_difference,
    hull_counterexample_build,
    hull_of_cyclic_membership,
    orbit_bound_certificate,
    plaut_apply,
    plaut_compare,
    plaut_compose,
    plaut_inverse,
    plaut_power,
    rank_rational,
    unrank_rational,
)
from .defsets import (
    ConjClosureSet,
    CosetSet,
    GeneratorPowers,
    IntervalSet,
    Membership,
    ProductSet,
    SetPower,
    SingletonSet,
    TranslateSet,
    defset_membership,
)
from .patterns import (
    PatternInstance,
    Row,
    Verdict,
    build_free_chain_pattern,
    build_kb_depth2,
    chain_nonmembership_certificate,
    row_inconsistency_check,
    verify_pattern,
)
from .report import Report, emit
from .demos import DEMO_NAMES, DemoOptions, run_demo

__all__ = [name for name in dir() if not name.startswith("_")]
