"""
Verificação polinomial exata do caso hard-core e checagens numéricas do
caso Ising com Δ = 3.
"""

from phasecrit.poly_verify.errors import InexactDivisionError, PipelineStageError
from phasecrit.poly_verify.kernel import (
    POLY_RING,
    VARIABLES,
    MultiPoly,
    divides,
    evaluate_mp,
    exact_divide,
    poly_hash,
    reduce_radicals,
    serialize_poly,
    strip_factor,
)
from phasecrit.poly_verify.pipeline import (
    COEFFICIENT_NAMES,
    SUPPORTED_D,
    build_case_polynomial,
    case_quotient,
    certify_coefficient,
    extract_c_coefficients,
    numeric_cross_check,
    parity_pattern,
    reparametrize,
    verify_hardcore_case,
    verify_sign_pattern,
)
from phasecrit.poly_verify.ising_bias import BIAS_LIMIT, ising_bias_checks

__all__ = [
    "InexactDivisionError",
    "PipelineStageError",
    "POLY_RING",
    "VARIABLES",
    "MultiPoly",
    "divides",
    "evaluate_mp",
    "exact_divide",
    "poly_hash",
    "reduce_radicals",
    "serialize_poly",
    "strip_factor",
    "COEFFICIENT_NAMES",
    "SUPPORTED_D",
    "build_case_polynomial",
    "case_quotient",
    "certify_coefficient",
    "extract_c_coefficients",
    "numeric_cross_check",
    "parity_pattern",
    "reparametrize",
    "verify_hardcore_case",
    "verify_sign_pattern",
    "BIAS_LIMIT",
    "ising_bias_checks",
]
