"""Positive-measure Cantor sets with certified density bounds.

Exact-arithmetic construction and verification of fat Cantor sets whose
maximal density function stays below a chosen bound, plus Lipschitz-quotient
scans of their primitives along unit-speed curves. Rationals cross the
boundary as ``fractions.Fraction``; report-like results come back as dicts.
"""

from ._core import (
    CantorApproximation,
    CantorError,
    CertificateFailed,
    DEFAULT_PRECISION_BITS,
    DegenerateDerivative,
    DomainError,
    Enclosure,
    IndeterminateCertificate,
    IndexOutOfRange,
    InvalidTarget,
    LambdaSequence,
    MAX_ENUMERATED_LEVEL,
    MAX_PRECISION_BITS,
    MIN_PRECISION_BITS,
    MissingInput,
    NumericalInconsistency,
    ParametricCurve,
    ParseError,
    ResourceLimit,
    ScalarArcFunction,
    SynthesisResult,
    SynthesisUnverified,
    TargetFunction,
    arclength_reparametrize,
    attainment_scan,
    build_indicator_primitive,
    build_penalized_primitive,
    builtin_curve,
    check_band_domination,
    check_prefix_maximality,
    chord_ratio_inf,
    component_lengths,
    curve_chord_target,
    curve_from_expressions,
    curve_length,
    decreasing_envelope,
    distance_from_start,
    find_rho,
    gap_lengths,
    level_intervals,
    level_quantities,
    levels_csv,
    levels_svg,
    max_speed_deviation,
    phi,
    phi_bruteforce,
    prefix_measure_bounds,
    prefix_measure_level,
    structural_pair_quotients,
    synthesize_lambda,
    verify_target,
)

__all__ = [
    "CantorApproximation",
    "CantorError",
    "CertificateFailed",
    "DEFAULT_PRECISION_BITS",
    "DegenerateDerivative",
    "DomainError",
    "Enclosure",
    "IndeterminateCertificate",
    "IndexOutOfRange",
    "InvalidTarget",
    "LambdaSequence",
    "MAX_ENUMERATED_LEVEL",
    "MAX_PRECISION_BITS",
    "MIN_PRECISION_BITS",
    "MissingInput",
    "NumericalInconsistency",
    "ParametricCurve",
    "ParseError",
    "ResourceLimit",
    "ScalarArcFunction",
    "SynthesisResult",
    "SynthesisUnverified",
    "TargetFunction",
    "arclength_reparametrize",
    "attainment_scan",
    "build_indicator_primitive",
    "build_penalized_primitive",
    "builtin_curve",
    "check_band_domination",
    "check_prefix_maximality",
    "chord_ratio_inf",
    "component_lengths",
    "curve_chord_target",
    "curve_from_expressions",
    "curve_length",
    "decreasing_envelope",
    "distance_from_start",
    "find_rho",
    "gap_lengths",
    "level_intervals",
    "level_quantities",
    "levels_csv",
    "levels_svg",
    "max_speed_deviation",
    "phi",
    "phi_bruteforce",
    "prefix_measure_bounds",
    "prefix_measure_level",
    "structural_pair_quotients",
    "synthesize_lambda",
    "verify_target",
]

__version__ = "0.1.0"
