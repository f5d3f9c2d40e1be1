"""
Razões condicionais dos momentos do gadget.

Os spins dos m′ vértices de U⁺ e U⁻ são fixados pelas contagens
η = (η₁⁻, η₁⁺, η₂⁻, η₂⁺); as razões comparam o momento condicionado com o
momento livre de Z^{α,β}.
"""

import logging
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from phasecrit.models import SpinModel, TreePhaseData
from phasecrit.moment_analysis.exact import validate_eta
from phasecrit.tree_criticality import FixedPointError, solve_tree_fixed_points, tree_map

logger = logging.getLogger(__name__)

_FORMS_TOL = 1e-10
_FIXED_POINT_TOL = 1e-9
_PHASE_TOL = 1e-9


def log_c_star(model: SpinModel, data: TreePhaseData, m_prime: int) -> float:
    """ln C* = (Δ−1)m′·ln((B₂+Q⁺)(B₂+Q⁻)/E₁)."""
    qp, qm = data.Q_plus, data.Q_minus
    e1 = model.b1 * qm * qp + qm + qp + model.b2
    return float(model.d * m_prime * np.log((model.b2 + qp) * (model.b2 + qm) / e1))


def c_star(model: SpinModel, data: TreePhaseData, m_prime: int) -> float:
    """Constante C* = ((B₂+Q⁺)(B₂+Q⁻)/E₁)^{(Δ−1)m′}."""
    return float(np.exp(log_c_star(model, data, m_prime)))


def gadget_x_star(model: SpinModel, alpha: float, beta: float) -> float:
    """
    Raiz não negativa x* de B₁B₂(α−x)(β−x) = x(1−α−β+x).

    A raiz é procurada em [max(0, α+β−1), min(α, β)], onde o lado esquerdo
    menos o direito troca de sinal.

    Raises:
        ValueError: Se (α, β) não estiver em [0, 1]²
    """
    if not (0 <= alpha <= 1 and 0 <= beta <= 1):
        raise ValueError(f"(α, β) deve estar em [0, 1]²: ({alpha}, {beta})")
    kappa = model.b1 * model.b2
    if kappa == 1:
        return alpha * beta

    def h(x: float) -> float:
        return kappa * (alpha - x) * (beta - x) - x * (1 - alpha - beta + x)

    lo, hi = max(0.0, alpha + beta - 1), min(alpha, beta)
    if h(lo) == 0:
        return lo
    if h(hi) == 0:
        return hi
    return float(brentq(h, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500))


def _log_x_star_form(model: SpinModel, alpha: float, beta: float, x: float, eta) -> float:
    e1m, e1p, e2m, e2p = eta
    with np.errstate(divide="ignore"):
        inner = (
            e1m * np.log(alpha)
            + e1p * np.log(1 - alpha)
            + e2m * np.log(beta)
            + e2p * np.log(1 - beta)
            - e1m * np.log(alpha - x)
            - (e1p - e2m) * np.log(1 - alpha - beta + x)
            - e2m * np.log(beta - x)
            + (e1p - e2m) * np.log(model.b2)
        )
    return float(model.d * inner + (e1m + e2m) * np.log(model.lam))


def _default_phase_data(model: SpinModel) -> Optional[TreePhaseData]:
    if model.delta >= 3 and model.is_antiferromagnetic:
        return solve_tree_fixed_points(model)
    return None


def gadget_first_moment_ratio(
    model: SpinModel,
    alpha: float,
    beta: float,
    eta: Sequence[int],
    data: Optional[TreePhaseData] = None,
) -> dict:
    """
    Razão E[Z^{α,β}(η)]/E[Z^{α,β}] do primeiro momento do gadget.

    Forma geral:
        [α^{η₁⁻}(1−α)^{η₁⁺}β^{η₂⁻}(1−β)^{η₂⁺}·B₂^{η₁⁺−η₂⁻}
         / ((α−x*)^{η₁⁻}(1−α−β+x*)^{η₁⁺−η₂⁻}(β−x*)^{η₂⁻})]^{Δ−1}·λ^{η₁⁻+η₂⁻}

    Em (α, β) = (p⁺, p⁻) também devolve a forma produto
    C*·(q⁺)^{η₁⁻}(1−q⁺)^{η₁⁺−m′}(q⁻)^{η₂⁻}(1−q⁻)^{η₂⁺−m′} e a forma
    C*·(Q⁺)^{η₁⁻}(Q⁻)^{η₂⁻}, conferindo que as três coincidem.

    Args:
        model: Modelo de spins
        alpha, beta: Frações de spins −1 em W⁺ e W⁻
        eta: Contagens (η₁⁻, η₁⁺, η₂⁻, η₂⁺)
        data: Pontos fixos já resolvidos (opcional)

    Returns:
        dict com x_star, ratio, log_ratio e, em (p⁺, p⁻), as formas alternativas
    """
    eta = validate_eta(eta)
    m_prime = eta[0] + eta[1]
    x = gadget_x_star(model, alpha, beta)
    log_ratio = _log_x_star_form(model, alpha, beta, x, eta)
    report = {
        "x_star": x,
        "m_prime": m_prime,
        "eta": list(eta),
        "log_ratio": log_ratio,
        "ratio": float(np.exp(log_ratio)),
    }

    data = data or _default_phase_data(model)
    if data is None:
        return report
    if abs(alpha - data.p_plus) > _PHASE_TOL or abs(beta - data.p_minus) > _PHASE_TOL:
        return report

    e1m, e1p, e2m, e2p = eta
    log_c = log_c_star(model, data, m_prime)
    qp, qm = data.q_plus, data.q_minus
    log_product = (
        log_c
        + e1m * np.log(qp)
        + (e1p - m_prime) * np.log(1 - qp)
        + e2m * np.log(qm)
        + (e2p - m_prime) * np.log(1 - qm)
    )
    log_fixed = log_c + e1m * np.log(data.Q_plus) + e2m * np.log(data.Q_minus)
    scale = _FORMS_TOL * max(1.0, abs(log_ratio))
    agree = abs(log_product - log_ratio) <= scale and abs(log_fixed - log_ratio) <= scale
    if not agree:
        logger.error(
            "Formas da razão do gadget divergem: x*=%.15g produto=%.15g ponto fixo=%.15g",
            log_ratio,
            log_product,
            log_fixed,
        )
    report.update(
        {
            "c_star": float(np.exp(log_c)),
            "log_c_star": log_c,
            "log_product_form": float(log_product),
            "log_fixed_point_form": float(log_fixed),
            "forms_agree": bool(agree),
        }
    )
    return report


def gadget_second_moment_ratio(
    model: SpinModel, eta: Sequence[int], data: Optional[TreePhaseData] = None
) -> dict:
    """
    Razão do segundo momento do gadget em (p⁺, p⁻).

    (C*)²·(λ((1+B₁Q⁻)/(B₂+Q⁻))^{Δ−1})^{2η₁⁻}·(λ((1+B₁Q⁺)/(B₂+Q⁺))^{Δ−1})^{2η₂⁻};
    os dois fatores entre parênteses valem Q⁺ e Q⁻ pela equação de ponto fixo.

    Returns:
        dict com ratio, log_ratio e a razão para o quadrado da razão do primeiro momento

    Raises:
        FixedPointError: Se a identidade de ponto fixo falhar além de 1e−9
    """
    eta = validate_eta(eta)
    data = data or solve_tree_fixed_points(model)
    e1m, e1p, e2m, _ = eta
    m_prime = e1m + e1p

    factor_minus = tree_map(model, data.Q_minus)
    factor_plus = tree_map(model, data.Q_plus)
    residuals = {
        "Q_plus": abs(factor_minus - data.Q_plus) / data.Q_plus,
        "Q_minus": abs(factor_plus - data.Q_minus) / data.Q_minus,
    }
    if max(residuals.values()) > _FIXED_POINT_TOL:
        logger.error("Identidade de ponto fixo violada na razão do gadget: %s", residuals)
        raise FixedPointError("Identidade de ponto fixo violada na razão do gadget", residuals)

    log_c = log_c_star(model, data, m_prime)
    log_ratio = 2 * log_c + 2 * e1m * np.log(factor_minus) + 2 * e2m * np.log(factor_plus)
    log_first = log_c + e1m * np.log(data.Q_plus) + e2m * np.log(data.Q_minus)
    return {
        "eta": list(eta),
        "m_prime": m_prime,
        "log_ratio": float(log_ratio),
        "ratio": float(np.exp(log_ratio)),
        "log_first_ratio": float(log_first),
        "log_ratio_to_first_squared": float(log_ratio - 2 * log_first),
        "fixed_point_residuals": residuals,
    }
