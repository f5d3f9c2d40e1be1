"""
Recursões de árvore para sistemas de 2 spins antiferromagnéticos.

Este módulo resolve os pontos fixos Q⁺, Q⁻, Q* da recursão de dois passos na
árvore (Δ−1)-ária, classifica o regime de unicidade pelo critério
(Δ−1)²ω* ≤ 1 e expõe as desigualdades de não unicidade como predicados
verificáveis.
"""

import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from phasecrit.models import Regime, SpinModel, TreePhaseData
from phasecrit.utils.config import get_boundary_tol, get_fixed_point_tol

logger = logging.getLogger(__name__)

_RTOL = 4 * np.finfo(float).eps


class FixedPointError(Exception):
    """Exceção lançada quando a solução dos pontos fixos não atinge a tolerância."""

    def __init__(self, message: str, residuals: Optional[Dict[str, float]] = None):
        super().__init__(message)
        self.residuals = residuals or {}


class InequalityViolation(Exception):
    """Exceção lançada quando uma desigualdade de não unicidade falha numericamente."""

    def __init__(self, message: str, report: Optional[dict] = None):
        super().__init__(message)
        self.report = report or {}


def hard_core_threshold(delta: int) -> float:
    """
    Fugacidade crítica λ_c = (Δ−1)^{Δ−1}/(Δ−2)^Δ do hard-core na árvore Δ-regular.

    Args:
        delta: Grau Δ ≥ 3

    Returns:
        λ_c
    """
    return (delta - 1) ** (delta - 1) / (delta - 2) ** delta


def ising_threshold(delta: int) -> float:
    """Interação crítica B_c = (Δ−2)/Δ do Ising antiferromagnético sem campo."""
    return (delta - 2) / delta


def tree_map(model: SpinModel, y: float) -> float:
    """Um passo da recursão: λ((B₁y+1)/(y+B₂))^{Δ−1}."""
    return model.lam * ((model.b1 * y + 1.0) / (y + model.b2)) ** model.d


def _relative_residual(model: SpinModel, x: float, y: float) -> float:
    """Maior resíduo relativo do par (x, y) nas duas equações de ponto fixo."""
    rx = abs(x - tree_map(model, y)) / x
    ry = abs(y - tree_map(model, x)) / y
    return max(rx, ry)


def omega_of(model: SpinModel, q_plus: float, q_minus: float) -> float:
    """
    ω = (1−B₁B₂)² Q⁺Q⁻ / [(1+B₁Q⁺)(1+B₁Q⁻)(B₂+Q⁺)(B₂+Q⁻)].

    Com Q⁺ = Q⁻ = Q* a mesma expressão dá ω*.
    """
    b1, b2 = model.b1, model.b2
    num = (1.0 - b1 * b2) ** 2 * q_plus * q_minus
    den = (1 + b1 * q_plus) * (1 + b1 * q_minus) * (b2 + q_plus) * (b2 + q_minus)
    return num / den


def _solve_symmetric(model: SpinModel) -> float:
    """Q* como a única raiz de x − f(x), crescente em x."""
    upper = tree_map(model, 0.0)
    return brentq(
        lambda x: x - tree_map(model, x), 0.0, upper, xtol=1e-300, rtol=_RTOL, maxiter=500
    )


def _solve_lower(model: SpinModel, q_star: float) -> Optional[float]:
    """
    Menor ponto fixo do mapa de dois passos, Q⁻, procurado em (0, Q*).

    Aproxima-se de Q* por pontos Q*(1 − 2^{-j}); o primeiro com f(f(x)) < x
    delimita Q⁻ junto com o ponto anterior. Devolve None se não houver troca
    de sinal (unicidade numérica).
    """

    def g(x: float) -> float:
        return tree_map(model, tree_map(model, x)) - x

    left = 0.0
    for j in range(1, 60):
        c = q_star * (1.0 - 2.0**-j)
        if c <= left:
            continue
        if g(c) < 0:
            return brentq(g, left, c, xtol=1e-300, rtol=_RTOL, maxiter=500)
        left = c
    return None


def tree_marginals(model: SpinModel, q_plus: float, q_minus: float, q_star: float) -> dict:
    """
    Marginais da raiz a partir das razões de chances.

    Args:
        model: Modelo de spins
        q_plus, q_minus, q_star: Pontos fixos Q⁺, Q⁻, Q*

    Returns:
        dict com q_plus, q_minus, q_star (árvore (Δ−1)-ária) e
        p_plus, p_minus, p_star (árvore Δ-regular)
    """
    b1, b2 = model.b1, model.b2
    e1 = b2 + q_plus + q_minus + b1 * q_plus * q_minus
    e1_star = b2 + 2 * q_star + b1 * q_star**2
    return {
        "q_plus": q_plus / (1 + q_plus),
        "q_minus": q_minus / (1 + q_minus),
        "q_star": q_star / (1 + q_star),
        "p_plus": q_plus * (1 + b1 * q_minus) / e1,
        "p_minus": q_minus * (1 + b1 * q_plus) / e1,
        "p_star": q_star * (1 + b1 * q_star) / e1_star,
    }


def omega_values(model: SpinModel, q_plus: float, q_minus: float, q_star: float) -> Tuple[float, float]:
    """Devolve (ω, ω*)."""
    return omega_of(model, q_plus, q_minus), omega_of(model, q_star, q_star)


def _build_phase_data(
    model: SpinModel,
    q_plus: float,
    q_minus: float,
    q_star: float,
    regime: Regime,
    candidates: Optional[dict] = None,
) -> TreePhaseData:
    marg = tree_marginals(model, q_plus, q_minus, q_star)
    omega, omega_star = omega_values(model, q_plus, q_minus, q_star)
    residual = max(
        _relative_residual(model, q_plus, q_minus),
        _relative_residual(model, q_star, q_star),
    )
    return TreePhaseData(
        Q_plus=q_plus,
        Q_minus=q_minus,
        Q_star=q_star,
        omega=omega,
        omega_star=omega_star,
        regime=regime,
        residual=residual,
        candidates=candidates,
        **marg,
    )


def solve_tree_fixed_points(model: SpinModel) -> TreePhaseData:
    """
    Resolve os pontos fixos da recursão de dois passos.

    Q* é obtido por bisseção na equação simétrica; Q⁻ por busca de troca de
    sinal de f(f(x)) − x em (0, Q*) e Q⁺ = f(Q⁻).

    Args:
        model: Modelo antiferromagnético com Δ ≥ 3

    Returns:
        TreePhaseData com o regime classificado

    Raises:
        ValueError: Se o modelo não for antiferromagnético
        FixedPointError: Se os resíduos excederem a tolerância configurada
    """
    model.validate_tree_regime()
    if not model.is_antiferromagnetic:
        raise ValueError("As recursões de dois passos exigem B₁B₂ < 1")

    q_star = _solve_symmetric(model)
    omega_star = omega_of(model, q_star, q_star)
    criterion = model.d**2 * omega_star
    q_lower = _solve_lower(model, q_star) if criterion > 1 else None

    if abs(criterion - 1.0) < get_boundary_tol():
        candidates = {"Q_star": q_star}
        if q_lower is not None:
            candidates.update({"Q_minus": q_lower, "Q_plus": tree_map(model, q_lower)})
        logger.warning(
            "Modelo na fronteira de unicidade: (Δ−1)²ω* = %.12g", criterion
        )
        data = _build_phase_data(model, q_star, q_star, q_star, Regime.BOUNDARY, candidates)
    elif criterion > 1 and q_lower is not None:
        q_upper = tree_map(model, q_lower)
        data = _build_phase_data(model, q_upper, q_lower, q_star, Regime.NON_UNIQUENESS)
    elif criterion > 1:
        raise FixedPointError(
            "Não unicidade sem par de pontos fixos distintos localizado",
            {"criterion": criterion, "Q_star": q_star},
        )
    else:
        data = _build_phase_data(model, q_star, q_star, q_star, Regime.UNIQUENESS)

    if data.residual > get_fixed_point_tol():
        raise FixedPointError(
            f"Resíduo dos pontos fixos acima da tolerância: {data.residual:.3e}",
            {
                "pair": _relative_residual(model, data.Q_plus, data.Q_minus),
                "star": _relative_residual(model, data.Q_star, data.Q_star),
            },
        )
    return data


def classify_uniqueness(model: SpinModel) -> dict:
    """
    Classifica o regime de unicidade.

    Para hard-core e Ising sem campo inclui o limiar em forma fechada e a
    distância assinada do parâmetro até ele.

    Args:
        model: Modelo de spins

    Returns:
        dict com regime, critério (Δ−1)²ω* e, quando houver, o limiar
    """
    data = solve_tree_fixed_points(model)
    report = {
        "regime": data.regime,
        "criterion": model.d**2 * data.omega_star,
        "Q_star": data.Q_star,
    }
    if model.is_hard_core:
        lam_c = hard_core_threshold(model.delta)
        report.update({"threshold": lam_c, "parameter": "lambda", "distance": model.lam - lam_c})
    elif model.is_ising_no_field:
        b_c = ising_threshold(model.delta)
        report.update({"threshold": b_c, "parameter": "b", "distance": model.b1 - b_c})
    return report


def ising_fixed_points_closed_form(b: float, delta: int = 3) -> Tuple[float, float]:
    """
    Pontos fixos do Ising sem campo pelas raízes de
    B²y² + (B²+2B−1)y + B² = 0. Só existe para Δ = 3.

    Args:
        b: Interação 0 < B < 1/3
        delta: Grau Δ; qualquer valor diferente de 3 é rejeitado

    Returns:
        (Q⁺, Q⁻) com Q⁺Q⁻ = 1

    Raises:
        ValueError: Se Δ ≠ 3 ou se não houver raízes distintas
    """
    if delta != 3:
        raise ValueError(f"A forma fechada dos pontos fixos do Ising só vale para Δ = 3: {delta}")
    p = b * b + 2 * b - 1
    disc = p * p - 4 * b**4
    if disc <= 0:
        raise ValueError(f"Sem raízes distintas para B = {b}")
    y = (-p - math.sqrt(disc)) / (2 * b * b)
    return 1.0 / y, y


def two_step_stability(model: SpinModel, data: TreePhaseData) -> dict:
    """
    Derivadas do mapa de dois passos nos pontos fixos.

    Em (Q⁺, Q⁻) a derivada é (Δ−1)²ω e em Q* é (Δ−1)²ω*.
    """

    def derivative(y: float) -> float:
        return (
            model.d
            * tree_map(model, y)
            * (model.b1 * model.b2 - 1)
            / ((model.b1 * y + 1) * (y + model.b2))
        )

    return {
        "pair": derivative(data.Q_plus) * derivative(data.Q_minus),
        "star": derivative(data.Q_star) ** 2,
        "pair_expected": model.d**2 * data.omega,
        "star_expected": model.d**2 * data.omega_star,
    }


def delta_two_form(model: SpinModel, data: TreePhaseData) -> float:
    """[(1−B₁B₂)√(Q⁺Q⁻)]² / [(1+B₁Q⁺)(1+B₁Q⁻)(B₂+Q⁺)(B₂+Q⁻)], igual a ω."""
    b1, b2 = model.b1, model.b2
    qp, qm = data.Q_plus, data.Q_minus
    root = (1 - b1 * b2) * math.sqrt(qp * qm)
    return root**2 / ((1 + b1 * qp) * (1 + b1 * qm) * (b2 + qp) * (b2 + qm))


def check_nonuniqueness_inequality(model: SpinModel, rtol: float = 1e-9) -> dict:
    """
    Verifica (Δ−1)²ω < 1 < (Δ−1)²ω* e a forma forte
    B₁xy + B₁B₂(x+y) + B₂ > (d−1)(1−B₁B₂)√(xy) em (x, y) = (Q⁺, Q⁻).

    Com Δ = 3 a forma forte é uma igualdade no Ising sem campo (os dois lados
    valem 1 − B²) e no hard-core (Q⁺Q⁻ = 1); só a folga rtol a aprova.

    Args:
        model: Modelo em não unicidade (ou na fronteira)
        rtol: Tolerância relativa das comparações

    Returns:
        dict com lhs, rhs, as grandezas intermediárias e pass

    Raises:
        InequalityViolation: Se alguma desigualdade falhar numericamente
    """
    data = solve_tree_fixed_points(model)
    d = model.d
    x, y = data.Q_plus, data.Q_minus
    strong_lhs = model.b1 * x * y + model.b1 * model.b2 * (x + y) + model.b2
    strong_rhs = (d - 1) * (1 - model.b1 * model.b2) * math.sqrt(x * y)
    report = {
        "regime": data.regime,
        "lhs": d**2 * data.omega,
        "rhs": d**2 * data.omega_star,
        "omega": data.omega,
        "omega_star": data.omega_star,
        "strong_lhs": strong_lhs,
        "strong_rhs": strong_rhs,
        "delta_two": delta_two_form(model, data),
        "boundary": data.regime == Regime.BOUNDARY,
    }

    if data.regime == Regime.BOUNDARY:
        report["pass"] = abs(report["rhs"] - 1.0) < get_boundary_tol()
        return report
    if data.regime != Regime.NON_UNIQUENESS:
        raise ValueError("A desigualdade de não unicidade exige o regime NonUniqueness")

    ok = (
        report["lhs"] < 1.0 + rtol
        and report["rhs"] > 1.0 - rtol
        and strong_lhs > strong_rhs * (1 - rtol)
    )
    report["pass"] = ok
    if not ok:
        logger.error("Desigualdade de não unicidade violada: %s", report)
        raise InequalityViolation("Desigualdade de não unicidade violada", report)
    return report


def ferro_monotonicity_check(b_prime: float, d: int, z_grid: Optional[np.ndarray] = None) -> dict:
    """
    Verifica z^{1/d} > (B'z+1)/(z+B') para z > 1 e a desigualdade inversa
    para z < 1, com B' ≤ (d+1)/(d−1).

    Args:
        b_prime: Parâmetro B'
        d: Inteiro d ≥ 2
        z_grid: Grade opcional; por padrão log-espaçada em [1e-6, 1e6] afastada de z = 1

    Returns:
        dict com pass e, em caso de falha, a testemunha z
    """
    if d < 2:
        raise ValueError(f"d deve ser pelo menos 2: {d}")
    if b_prime > (d + 1) / (d - 1) + 1e-15:
        raise ValueError(f"B' deve ser no máximo (d+1)/(d-1): {b_prime}")

    if z_grid is None:
        z_grid = np.concatenate([np.logspace(-6, -1e-3, 400), np.logspace(1e-3, 6, 400)])
    z = np.asarray(z_grid, dtype=float)
    z = z[z != 1.0]
    lhs = z ** (1.0 / d)
    rhs = (b_prime * z + 1) / (z + b_prime)
    good = np.where(z > 1, lhs > rhs, lhs < rhs)
    if np.all(good):
        return {"pass": True, "points": int(z.size)}
    witness = float(z[np.argmin(good)])
    return {"pass": False, "witness": witness, "points": int(z.size)}
