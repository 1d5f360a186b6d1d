"""Finite groupoids with Haar systems and quasi-invariant unit measures,
and the weak pullback of a cospan of such, verified in exact arithmetic."""

from .errors import (
    BaseMismatch,
    DanglingReference,
    EmptySpace,
    GenerationExhausted,
    GroupoidError,
    ImageMismatch,
    IncompatibleFibredProduct,
    InvalidCospan,
    MalformedInput,
    NotADisintegration,
    NotAUnit,
    NotEquivariant,
    NotMeasureClassPreserving,
    NotQuasiInvariant,
    ParseError,
    PrecomputedConditionFailed,
    UnsupportedVersion,
)
from .groupoid import (
    FiniteGroupoid,
    GroupoidHom,
    OrbitPartition,
    ValidationReport,
    Violation,
    compose_homs,
    identity_hom,
    orbit_map_through,
    orbits,
    r_fiber,
    validate_groupoid,
    validate_hom,
)
from .measures import (
    FiniteMeasure,
    MeasureSystem,
    PairedSet,
    compose_systems,
    compose_with_measure,
    counting,
    counting_system,
    dirac,
    dirac_system,
    disintegrate,
    fibred_product,
    lift_system,
    product_system,
    push_forward,
    same_measure_class,
    validate_system,
)
from .haar import (
    HaarGroupoid,
    ModularFunction,
    counting_haar_system,
    haar_system_from_source_weights,
    induced_measure,
    inverse_measure,
    is_haar,
    is_quasi_invariant,
    modular_function,
    range_class_check,
    validate_haar_groupoid,
    validate_haar_hom,
)
from .pullback import (
    Cospan,
    PullbackGroupoid,
    WeakPullbackResult,
    build_weak_pullback,
    check_commuting_diamond,
    check_disintegration_independence,
    check_expanding_lemma,
    check_fiber_product_lemma,
    check_haar_theorem,
    check_projection_homs,
    check_quasi_invariance_and_modular,
    check_triple_integral_lemma,
    outer_square_counterexample,
    validate_cospan,
    weak_pullback_groupoid,
)
from .families import (
    CechCospanData,
    FiniteCover,
    GroupAction,
    IsoVerdict,
    TransformationCospanData,
    canonical_iso_cech,
    canonical_iso_transformation,
    cech_groupoid,
    cech_hom,
    cotrivial_comparison_hom,
    cotrivial_groupoid,
    cyclic_group,
    direct_product,
    disjoint_union,
    is_isomorphism,
    pair_groupoid,
    regular_pullback,
    transformation_groupoid,
    trivial_group,
    with_counting_haar,
)
from .generate import (
    alternate_disintegration,
    random_cospan,
    random_cotrivial_cospan,
    random_groupoid,
    random_haar_groupoid,
)

__version__ = "0.1.0"
