"""
Análise de primeiro e segundo momentos.

Este pacote avalia os expoentes Φ₁/φ₁ e Φ₂/φ₂, localiza e classifica seus
pontos críticos, calcula momentos exatos em n finito, as constantes
assintóticas e as razões condicionais do gadget.
"""

from phasecrit.moment_analysis.errors import (
    CompetingMaximumError,
    CriticalPointError,
    RegionError,
    RoundingError,
)
from phasecrit.moment_analysis.exponents import (
    f1,
    f2,
    first_moment_matrix,
    gamma_range,
    overlap_marginals,
    phi1,
    phi1_gradient,
    phi2,
    phi2_gradient,
    second_moment_matrix,
)
from phasecrit.moment_analysis.hessians import (
    lower_right_log_minors,
    phi1_hessian,
    phi2_hessian,
    schur_complement,
)
from phasecrit.moment_analysis.exact import (
    SECOND_MOMENT_MAX_N,
    exact_first_moment,
    exact_gadget_first_moment,
    exact_second_moment_term,
    log_binom,
    round_fractions,
)
from phasecrit.moment_analysis.asymptotics import (
    asymptotic_prefactors,
    e_values,
    gaussian_ratio_check,
    laplace_constant,
    moment_ratio_limit,
    multinomial_ratio_approx,
    quadratic_form_determinant,
)
from phasecrit.moment_analysis.critical import (
    classify_phi1_critical_points,
    find_phi1_critical_points,
    hypotheses,
    second_moment_stationarity,
    verify_phi2_maximum,
)
from phasecrit.moment_analysis.gadget import (
    c_star,
    gadget_first_moment_ratio,
    gadget_second_moment_ratio,
    gadget_x_star,
)

__all__ = [
    "CompetingMaximumError",
    "CriticalPointError",
    "RegionError",
    "RoundingError",
    "f1",
    "f2",
    "first_moment_matrix",
    "gamma_range",
    "overlap_marginals",
    "phi1",
    "phi1_gradient",
    "phi2",
    "phi2_gradient",
    "second_moment_matrix",
    "lower_right_log_minors",
    "phi1_hessian",
    "phi2_hessian",
    "schur_complement",
    "SECOND_MOMENT_MAX_N",
    "exact_first_moment",
    "exact_gadget_first_moment",
    "exact_second_moment_term",
    "log_binom",
    "round_fractions",
    "asymptotic_prefactors",
    "e_values",
    "gaussian_ratio_check",
    "laplace_constant",
    "moment_ratio_limit",
    "multinomial_ratio_approx",
    "quadratic_form_determinant",
    "classify_phi1_critical_points",
    "find_phi1_critical_points",
    "hypotheses",
    "second_moment_stationarity",
    "verify_phi2_maximum",
    "c_star",
    "gadget_first_moment_ratio",
    "gadget_second_moment_ratio",
    "gadget_x_star",
]
