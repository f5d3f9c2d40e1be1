"""
Verificações numéricas das cotas de viés do Ising antiferromagnético com Δ = 3.

Para 0 < B < 3 − 2√2 e (α, β) = (p⁺, p⁻):
    α/(1−α) = (1−β)/β > (4/9)B⁻³;
    r₁, c₄ > (1/3)B⁻² para quaisquer escaladores do segundo momento;
    r₁, c₄ > (4/9)B⁻² quando r₁r₄, c₁c₄ > 1;
    B²(r₁+r₄)² + 2B(B²+1)(r₁+r₄) + 4B² > (1−B²)²√(r₁r₄) quando r₁r₄ − 1 e
    c₁c₄ − 1 têm o mesmo sinal.
"""

import logging
from typing import Iterable, List

import numpy as np

from phasecrit.entropy_scaling import (
    InfeasibleMarginalsError,
    ScalingConvergenceError,
    maximize_entropy,
)
from phasecrit.models import SpinModel
from phasecrit.moment_analysis import gamma_range, overlap_marginals, second_moment_matrix
from phasecrit.tree_criticality import solve_tree_fixed_points

logger = logging.getLogger(__name__)

BIAS_LIMIT = 3 - 2 * np.sqrt(2)


def _interior(lo: float, hi: float, size: int) -> np.ndarray:
    return np.linspace(lo, hi, size + 2)[1:-1]


def ising_bias_checks(b_grid: Iterable[float], grid: int = 7) -> List[dict]:
    """
    Avalia as cotas de viés em cada B da grade.

    Os escaladores r₁ = R₁/R₂, r₄ = R₄/R₂, c₁ = C₁/C₂, c₄ = C₄/C₂ vêm do
    escalonamento de M₁⊗M₁ em uma grade grid×grid de (γ, δ) interiores.

    Args:
        b_grid: Valores de B em (0, 3 − 2√2)
        grid: Pontos por eixo em (γ, δ)

    Returns:
        Lista de dicts com as margens mínimas (razão lado esquerdo/lado direito)
        e os indicadores de aprovação

    Raises:
        ValueError: Se algum B estiver fora de (0, 3 − 2√2)
    """
    reports = []
    for b in b_grid:
        b = float(b)
        if not 0 < b < BIAS_LIMIT:
            raise ValueError(f"B deve estar em (0, {BIAS_LIMIT:.6f}): {b}")
        model = SpinModel.ising(b, 3)
        data = solve_tree_fixed_points(model)
        alpha, beta = data.p_plus, data.p_minus
        odds_alpha = alpha / (1 - alpha)
        odds_beta = (1 - beta) / beta
        bias_bound = 4 / (9 * b**3)

        M = second_moment_matrix(model)
        weak, strong, inequality = np.inf, np.inf, np.inf
        evaluated = skipped = 0
        for gamma in _interior(*gamma_range(alpha), grid):
            for delta in _interior(*gamma_range(beta), grid):
                try:
                    solution = maximize_entropy(M, overlap_marginals(alpha, beta, gamma, delta))
                except (InfeasibleMarginalsError, ScalingConvergenceError) as exc:
                    logger.debug("Escalonamento falhou em (γ, δ) = (%g, %g): %s", gamma, delta, exc)
                    skipped += 1
                    continue
                R, C = solution.R, solution.C
                r1, r4 = R[0] / R[1], R[3] / R[1]
                c1, c4 = C[0] / C[1], C[3] / C[1]
                low = min(r1, c4) * b**2
                weak = min(weak, low * 3)
                if r1 * r4 > 1 and c1 * c4 > 1:
                    strong = min(strong, low * 9 / 4)
                evaluated += 1
                if (r1 * r4 - 1) * (c1 * c4 - 1) < 0:
                    continue
                s = r1 + r4
                lhs = b**2 * s**2 + 2 * b * (b**2 + 1) * s + 4 * b**2
                rhs = (1 - b**2) ** 2 * np.sqrt(r1 * r4)
                inequality = min(inequality, lhs / rhs)

        reports.append(
            {
                "b": b,
                "p_plus": alpha,
                "p_minus": beta,
                "odds": odds_alpha,
                "odds_symmetric": bool(np.isclose(odds_alpha, odds_beta, rtol=1e-9)),
                "bias_margin": odds_alpha / bias_bound,
                "bias_pass": bool(odds_alpha > bias_bound),
                "weak_margin": float(weak),
                "weak_pass": bool(weak > 1),
                "strong_margin": float(strong),
                "strong_pass": bool(strong > 1),
                "inequality_margin": float(inequality),
                "inequality_pass": bool(inequality > 1),
                "evaluated": evaluated,
                "skipped": skipped,
            }
        )
    return reports
