"""
Expoentes Φ₁/φ₁ e Φ₂/φ₂ dos momentos e seus gradientes.

φ₁(α, β) = max_X Φ₁(α, β, X) e φ₂(γ, δ) = max_Y Φ₂(γ, δ, Y) são obtidos
pelo escalonamento de entropia com as matrizes de peso

    M₁ = [[B₁, 1], [1, B₂]]      M₂ = M₁ ⊗ M₁

onde o índice de M₂ é 2·s₁ + s₂ com s = 0 para o spin −1.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.special import xlogy

from phasecrit.entropy_scaling import (
    InfeasibleMarginalsError,
    gstar_gradient,
    maximize_entropy,
)
from phasecrit.models import FirstMomentPoint, MarginalSpec, SecondMomentPoint, SpinModel
from phasecrit.models import ScalingSolution
from phasecrit.moment_analysis.errors import RegionError

logger = logging.getLogger(__name__)

_REGION_TOL = 1e-14

_GAMMA_DIRECTION = np.array([1.0, -1.0, -1.0, 1.0])


def first_moment_matrix(model: SpinModel) -> np.ndarray:
    """Matriz de pesos M₁ do primeiro momento."""
    return model.edge_matrix()


def second_moment_matrix(model: SpinModel) -> np.ndarray:
    """Matriz de pesos 4×4 M₂ = M₁ ⊗ M₁ do segundo momento."""
    m1 = model.edge_matrix()
    return np.kron(m1, m1)


def _clip_unit(value: float, name: str) -> float:
    if value < -_REGION_TOL or value > 1 + _REGION_TOL:
        raise RegionError(f"{name} deve estar em [0, 1]: {value}")
    return min(max(value, 0.0), 1.0)


def f1(alpha: float, beta: float) -> float:
    """Termo f₁ = α ln α + (1−α) ln(1−α) + β ln β + (1−β) ln(1−β)."""
    return float(
        xlogy(alpha, alpha) + xlogy(1 - alpha, 1 - alpha) + xlogy(beta, beta) + xlogy(1 - beta, 1 - beta)
    )


def overlap_marginals(alpha: float, beta: float, gamma: float, delta: float) -> MarginalSpec:
    """
    Marginais L = (γ, α−γ, α−γ, 1−2α+γ) e R = (δ, β−δ, β−δ, 1−2β+δ).

    Raises:
        RegionError: Se (γ, δ) estiver fora da região admissível
    """
    rows = np.array([gamma, alpha - gamma, alpha - gamma, 1 - 2 * alpha + gamma])
    cols = np.array([delta, beta - delta, beta - delta, 1 - 2 * beta + delta])
    if np.any(rows < -_REGION_TOL) or np.any(cols < -_REGION_TOL):
        raise RegionError(
            f"(γ, δ) = ({gamma}, {delta}) fora da região admissível para (α, β) = ({alpha}, {beta})"
        )
    rows = np.clip(rows, 0.0, None)
    cols = np.clip(cols, 0.0, None)
    return MarginalSpec(rows / rows.sum(), cols / cols.sum())


def f2(alpha: float, beta: float, gamma: float, delta: float) -> float:
    """Termo f₂ (entropias negativas das partições induzidas por σ₁, σ₂)."""
    return float(
        2 * xlogy(alpha - gamma, alpha - gamma)
        + xlogy(gamma, gamma)
        + xlogy(1 - 2 * alpha + gamma, 1 - 2 * alpha + gamma)
        + 2 * xlogy(beta - delta, beta - delta)
        + xlogy(delta, delta)
        + xlogy(1 - 2 * beta + delta, 1 - 2 * beta + delta)
    )


def gamma_range(alpha: float) -> Tuple[float, float]:
    """Intervalo admissível de γ para α fixo: [max(0, 2α−1), α]."""
    return max(0.0, 2 * alpha - 1), alpha


def _scale(M: np.ndarray, marginals: MarginalSpec) -> Optional[ScalingSolution]:
    try:
        return maximize_entropy(M, marginals)
    except InfeasibleMarginalsError as e:
        logger.debug("Região vazia para o programa de entropia: %s", e)
        return None


def phi1(model: SpinModel, alpha: float, beta: float) -> FirstMomentPoint:
    """
    Avalia φ₁(α, β) = (α+β) ln λ + (Δ−1) f₁ + Δ max_X g₁(X).

    Pontos inviáveis (hard-core com α+β > 1) devolvem φ₁ = −inf e X = None;
    pontos de fronteira usam a convenção 0·ln 0 = 0.

    Args:
        model: Modelo de spins
        alpha, beta: Frações de spins −1 em V₁ e V₂

    Returns:
        FirstMomentPoint com o maximizador X

    Raises:
        RegionError: Se α ou β estiver fora de [0, 1]
    """
    alpha = _clip_unit(alpha, "alpha")
    beta = _clip_unit(beta, "beta")
    solution = _scale(first_moment_matrix(model), MarginalSpec.binary(alpha, beta))
    if solution is None:
        return FirstMomentPoint(alpha=alpha, beta=beta, X=None, phi1=float("-inf"))
    value = (
        (alpha + beta) * np.log(model.lam)
        + (model.delta - 1) * f1(alpha, beta)
        + model.delta * solution.g_star
    )
    return FirstMomentPoint(alpha=alpha, beta=beta, X=solution.Z_star, phi1=float(value))


def phi2(model: SpinModel, alpha: float, beta: float, gamma: float, delta: float) -> SecondMomentPoint:
    """
    Avalia φ₂(γ, δ) = 2(α+β) ln λ + (Δ−1) f₂ + Δ max_Y g₂(Y) para (α, β) fixos.

    Returns:
        SecondMomentPoint com o maximizador 4×4 Y

    Raises:
        RegionError: Se γ ∉ [max(0,2α−1), α] ou δ ∉ [max(0,2β−1), β]
    """
    alpha = _clip_unit(alpha, "alpha")
    beta = _clip_unit(beta, "beta")
    marginals = overlap_marginals(alpha, beta, gamma, delta)
    solution = _scale(second_moment_matrix(model), marginals)
    if solution is None:
        return SecondMomentPoint(alpha, beta, gamma, delta, Y=None, phi2=float("-inf"))
    value = (
        2 * (alpha + beta) * np.log(model.lam)
        + (model.delta - 1) * f2(alpha, beta, gamma, delta)
        + model.delta * solution.g_star
    )
    return SecondMomentPoint(alpha, beta, gamma, delta, Y=solution.Z_star, phi2=float(value))


def phi1_gradient(model: SpinModel, alpha: float, beta: float) -> Tuple[float, float]:
    """
    Gradiente (∂φ₁/∂α, ∂φ₁/∂β) pela derivação implícita dos escaladores.

    ∂φ₁/∂α = ln λ + (Δ−1) ln(α/(1−α)) − Δ ln(R₁/R₂), e simetricamente em β
    com C₁/C₂.

    Raises:
        RegionError: Se (α, β) não for interior ou for inviável
    """
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise RegionError(f"O gradiente de φ₁ exige (α, β) interior: ({alpha}, {beta})")
    M = first_moment_matrix(model)
    marginals = MarginalSpec.binary(alpha, beta)
    solution = _scale(M, marginals)
    if solution is None:
        raise RegionError(f"(α, β) = ({alpha}, {beta}) é inviável para o modelo")
    zero = np.zeros(2)
    d_alpha, d_beta = gstar_gradient(
        M,
        marginals,
        [(np.array([1.0, -1.0]), zero), (zero, np.array([1.0, -1.0]))],
        solution=solution,
    )
    log_lam = np.log(model.lam)
    d = model.delta - 1
    return (
        float(log_lam + d * np.log(alpha / (1 - alpha)) + model.delta * d_alpha),
        float(log_lam + d * np.log(beta / (1 - beta)) + model.delta * d_beta),
    )


def phi2_gradient(
    model: SpinModel, alpha: float, beta: float, gamma: float, delta: float
) -> Tuple[float, float]:
    """
    Gradiente (∂φ₂/∂γ, ∂φ₂/∂δ).

    ∂φ₂/∂γ = (Δ−1) ln(γ(1−2α+γ)/(α−γ)²) − Δ ln(R₁R₄/(R₂R₃)), e
    simetricamente em δ com os escaladores de coluna.

    Raises:
        RegionError: Se (γ, δ) não for interior à região admissível
    """
    marginals = overlap_marginals(alpha, beta, gamma, delta)
    if np.any(marginals.row_marginals <= 0) or np.any(marginals.col_marginals <= 0):
        raise RegionError(f"O gradiente de φ₂ exige (γ, δ) interior: ({gamma}, {delta})")
    M = second_moment_matrix(model)
    solution = _scale(M, marginals)
    if solution is None:
        raise RegionError(f"(γ, δ) = ({gamma}, {delta}) é inviável para o modelo")
    zero = np.zeros(4)
    d_gamma, d_delta = gstar_gradient(
        M,
        marginals,
        [(_GAMMA_DIRECTION, zero), (zero, _GAMMA_DIRECTION)],
        solution=solution,
    )
    d = model.delta - 1
    f_gamma = np.log(gamma) + np.log(1 - 2 * alpha + gamma) - 2 * np.log(alpha - gamma)
    f_delta = np.log(delta) + np.log(1 - 2 * beta + delta) - 2 * np.log(beta - delta)
    return (
        float(d * f_gamma + model.delta * d_gamma),
        float(d * f_delta + model.delta * d_delta),
    )
