"""
Constantes assintóticas dos momentos em (α, β) = (p⁺, p⁻).

Expressões auxiliares:
    E₁ = B₁Q⁻Q⁺ + Q⁻ + Q⁺ + B₂
    E₂ = B₁Q⁻Q⁺ + B₁B₂(Q⁺ + Q⁻) + B₂
    E₃ = (1−B₁B₂)²Q⁻Q⁺ + (1 + B₁(Q⁺+Q⁻) + B₁²Q⁻Q⁺)(B₂² + B₂(Q⁻+Q⁺) + Q⁻Q⁺)
"""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import dblquad
from scipy.special import gammaln

from phasecrit.models import AsymptoticConstants, SpinModel, TreePhaseData
from phasecrit.moment_analysis.exponents import phi1, phi2
from phasecrit.moment_analysis.hessians import phi2_hessian, schur_complement
from phasecrit.tree_criticality import InequalityViolation, solve_tree_fixed_points

logger = logging.getLogger(__name__)


def e_values(model: SpinModel, data: TreePhaseData) -> tuple:
    """Devolve (E₁, E₂, E₃) nos pontos fixos Q⁺, Q⁻."""
    b1, b2 = model.b1, model.b2
    qp, qm = data.Q_plus, data.Q_minus
    e1 = b1 * qm * qp + qm + qp + b2
    e2 = b1 * qm * qp + b1 * b2 * (qp + qm) + b2
    e3 = (1 - b1 * b2) ** 2 * qm * qp + (1 + b1 * (qp + qm) + b1**2 * qm * qp) * (
        b2**2 + b2 * (qm + qp) + qm * qp
    )
    return e1, e2, e3


def boundary_product(model: SpinModel, data: TreePhaseData) -> float:
    """P = (B₂+Q⁻)(B₂+Q⁺)(1+B₁Q⁻)(1+B₁Q⁺)."""
    b1, b2 = model.b1, model.b2
    qp, qm = data.Q_plus, data.Q_minus
    return (b2 + qm) * (b2 + qp) * (1 + b1 * qm) * (1 + b1 * qp)


def moment_ratio_limit(model: SpinModel, data: Optional[TreePhaseData] = None) -> float:
    """
    Limite de E[Z²]/E[Z]²: (1−ω²)^{−(Δ−1)/2}·(1−(Δ−1)²ω²)^{−1/2}.

    Raises:
        InequalityViolation: Se (Δ−1)²ω ≥ 1
    """
    data = data or solve_tree_fixed_points(model)
    d = model.delta - 1
    omega = data.omega
    if d**2 * omega >= 1:
        raise InequalityViolation(
            f"(Δ−1)²ω = {d**2 * omega:.12g} ≥ 1; a razão limite não está definida",
            {"omega": omega},
        )
    return float((1 - omega**2) ** (-d / 2) * (1 - d**2 * omega**2) ** (-0.5))


def quadratic_form_determinant(model: SpinModel, data: TreePhaseData) -> float:
    """4DF − E² = E₁⁷/((Q⁺Q⁻)²E₂E₃)·(1 − (Δ−1)²ω²)."""
    e1, e2, e3 = e_values(model, data)
    qq = data.Q_plus * data.Q_minus
    d = model.delta - 1
    return e1**7 / (qq**2 * e2 * e3) * (1 - d**2 * data.omega**2)


def asymptotic_prefactors(
    model: SpinModel, data: Optional[TreePhaseData] = None
) -> AsymptoticConstants:
    """
    Avalia E₁, E₂, E₃ e os prefatores de Laplace dos dois momentos em (p⁺, p⁻).

    first_prefactor é o limite de E[Z]/(n⁻¹e^{nΦ₁}) e second_prefactor o
    limite de E[Z²]/(n⁻²e^{nΦ₂}); a razão entre o segundo e o quadrado do
    primeiro coincide com ratio_limit.

    Returns:
        AsymptoticConstants
    """
    data = data or solve_tree_fixed_points(model)
    e1, e2, e3 = e_values(model, data)
    d = model.delta - 1
    delta = model.delta
    qq = data.Q_plus * data.Q_minus
    alpha, beta = data.p_plus, data.p_minus
    omega = data.omega
    occupancy = alpha * beta * (1 - alpha) * (1 - beta)

    first = (1 / (2 * np.pi)) * occupancy ** (d / 2) * (qq * e2 / e1**3) ** (-delta / 2)

    tail = 1 - d**2 * omega**2
    if tail > 0:
        second = (
            (1 / (4 * np.pi**2))
            * occupancy ** (2 * d)
            * (qq**4 * e2**3 * e3 / e1**13) ** (-delta / 2)
            * (qq**2 * e2 * e3 / e1**7) ** 0.5
            * tail ** (-0.5)
        )
        ratio = moment_ratio_limit(model, data)
    else:
        logger.warning("1 − (Δ−1)²ω² ≤ 0: prefator do segundo momento indefinido")
        second = float("inf")
        ratio = float("inf")

    product = boundary_product(model, data)
    residual = abs(e1 * e2 * e3 / product**2 - (1 - omega**2))
    return AsymptoticConstants(
        E1=float(e1),
        E2=float(e2),
        E3=float(e3),
        first_prefactor=float(first),
        second_prefactor=float(second),
        ratio_limit=float(ratio),
        quadratic_form_det=float(quadratic_form_determinant(model, data)),
        identity_residual=float(residual),
    )


def laplace_constant(model: SpinModel, alpha: float, beta: float) -> float:
    """
    Constante de Laplace do primeiro momento em (α, β) arbitrário.

    lim E[Z^{α,β}]·n·e^{−nΦ₁} = (1/2π)(αβ(1−α)(1−β))^{(Δ−1)/2}((−H)Πx*)^{−Δ/2},
    com (−H)Πx* = Σ_k Π_{l≠k} x*_l (o que cobre células nulas do hard-core).

    Raises:
        ValueError: Se (α, β) for inviável
    """
    point = phi1(model, alpha, beta)
    if not point.feasible:
        raise ValueError(f"(α, β) = ({alpha}, {beta}) é inviável para o modelo")
    x = point.X.ravel()
    weighted = sum(np.prod(np.delete(x, k)) for k in range(x.size))
    occupancy = alpha * beta * (1 - alpha) * (1 - beta)
    d = model.delta - 1
    return float((1 / (2 * np.pi)) * occupancy ** (d / 2) * weighted ** (-model.delta / 2))


def gaussian_ratio_check(model: SpinModel, data: Optional[TreePhaseData] = None) -> dict:
    """
    Confere 4DF − E² pela Hessiana numérica de Φ₂ e por integração gaussiana.

    O complemento de Schur S de −H em (γ, δ) tem det S = 4DF − E², e
    (1/2π)∬exp(−½vᵀSv) dv = (det S)^{−1/2}.

    Returns:
        dict com os três valores e os desvios relativos
    """
    data = data or solve_tree_fixed_points(model)
    if model.b1 * model.b2 <= 0:
        raise ValueError("A verificação gaussiana exige B₁B₂ > 0")
    alpha, beta = data.p_plus, data.p_minus
    point = phi2(model, alpha, beta, alpha**2, beta**2)
    H = phi2_hessian(model, alpha, beta, alpha**2, beta**2, point.Y)
    S = schur_complement(H)
    numeric_det = float(np.linalg.det(S))
    closed = quadratic_form_determinant(model, data)

    inv = np.linalg.inv(S)
    sx, sy = 10 * np.sqrt(inv[0, 0]), 10 * np.sqrt(inv[1, 1])

    def integrand(y, x):
        v = np.array([x, y])
        return np.exp(-0.5 * v @ S @ v) / (2 * np.pi)

    integral, _ = dblquad(integrand, -sx, sx, -sy, sy, epsabs=0, epsrel=1e-10)
    return {
        "closed_form": closed,
        "schur_determinant": numeric_det,
        "gaussian_integral": float(integral),
        "integral_determinant": float(integral ** (-2)),
        "relative_error": abs(numeric_det - closed) / abs(closed),
        "integral_relative_error": abs(integral ** (-2) - closed) / abs(closed),
    }


def multinomial_ratio_approx(b, y) -> dict:
    """
    Razão de multinomiais C(a+x; b+y)/C(a; b) e sua aproximação a^x/Πbᵢ^{yᵢ}.

    Args:
        b: Inteiros não negativos b₁..b_ℓ (a = Σb)
        y: Inteiros não negativos y₁..y_ℓ (x = Σy) com yᵢ² ≤ bᵢ

    Returns:
        dict com approx, exact, relative_error e bound = Σyᵢ²/bᵢ

    Raises:
        ValueError: Se yᵢ² > bᵢ para algum i
    """
    b = np.asarray(b, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if b.shape != y.shape or np.any(b < 0) or np.any(y < 0):
        raise ValueError("b e y devem ser vetores de mesmo tamanho com entradas não negativas")
    if np.any(y**2 > b):
        raise ValueError(f"A aproximação exige yᵢ² ≤ bᵢ: b={b.tolist()}, y={y.tolist()}")
    a, x = int(b.sum()), int(y.sum())
    active = y > 0
    log_approx = x * np.log(a) - np.sum(y[active] * np.log(b[active])) if x else 0.0
    log_exact = gammaln(a + x + 1) - gammaln(a + 1) + np.sum(gammaln(b + 1) - gammaln(b + y + 1))
    bound = float(np.sum(y[active] ** 2 / b[active])) if x else 0.0
    approx, exact = float(np.exp(log_approx)), float(np.exp(log_exact))
    return {
        "approx": approx,
        "exact": exact,
        "relative_error": abs(approx - exact) / exact,
        "bound": bound,
    }
