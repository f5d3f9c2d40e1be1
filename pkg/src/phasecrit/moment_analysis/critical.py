"""
Pontos críticos de φ₁ e φ₂.

Os pontos críticos de φ₁ vêm dos pontos fixos da árvore: (p⁺, p⁻), (p⁻, p⁺)
e (p*, p*) em não unicidade, apenas (p*, p*) em unicidade. Cada um é
conferido pelo gradiente analítico e classificado pelos menores da
Hessiana de Φ₁; para B₁B₂ > 0 os menores numéricos são comparados com as
formas fechadas P₁, P₂, P₃.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize, root

from phasecrit.entropy_scaling import maximize_entropy
from phasecrit.models import SpinModel, TreePhaseData
from phasecrit.moment_analysis.asymptotics import e_values
from phasecrit.moment_analysis.errors import (
    CompetingMaximumError,
    CriticalPointError,
    RegionError,
)
from phasecrit.moment_analysis.exponents import (
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
)
from phasecrit.tree_criticality import solve_tree_fixed_points

logger = logging.getLogger(__name__)

GRADIENT_TOL = 1e-8
MINOR_TOL = 1e-6
POSITION_TOL = 1e-7
COMPETING_TOL = 1e-10

_AWAY = 1e-4


def _phase_data(model: SpinModel, data: Optional[TreePhaseData]) -> TreePhaseData:
    return data or solve_tree_fixed_points(model)


def find_phi1_critical_points(
    model: SpinModel, data: Optional[TreePhaseData] = None
) -> List[Tuple[float, float]]:
    """
    Localiza os pontos críticos de φ₁ a partir dos pontos fixos da árvore.

    Args:
        model: Modelo antiferromagnético com Δ ≥ 3
        data: Pontos fixos já resolvidos (opcional)

    Returns:
        Lista de pares (α, β)

    Raises:
        CriticalPointError: Se ‖∇φ₁‖ ≥ 1e−8 em algum ponto
    """
    data = _phase_data(model, data)
    if data.has_distinct_phases:
        points = [
            (data.p_plus, data.p_minus),
            (data.p_minus, data.p_plus),
            (data.p_star, data.p_star),
        ]
    else:
        points = [(data.p_star, data.p_star)]

    for alpha, beta in points:
        gradient = phi1_gradient(model, alpha, beta)
        norm = float(np.hypot(*gradient))
        if norm >= GRADIENT_TOL:
            logger.error("Ponto (%.15g, %.15g) não é estacionário: ‖∇φ₁‖ = %.3e", alpha, beta, norm)
            raise CriticalPointError(
                f"‖∇φ₁‖ = {norm:.3e} em ({alpha}, {beta})",
                {"point": [alpha, beta], "gradient": list(gradient)},
            )
    return points


def phi1_minor_closed_forms(
    model: SpinModel, q_plus: float, q_minus: float, omega: float
) -> List[float]:
    """
    Formas fechadas P₁, P₂, P₃ dos menores de −H em (α, β, x₁₁).

        P₁ = ΔE₁E₂/(B₁B₂Q⁺Q⁻)
        P₂ = ΔE₁²(B₂+Q⁻)(1+B₁Q⁻)(1+(Δ−1)ω)/(B₁B₂(Q⁻)²Q⁺)
        P₃ = ΔE₁⁴(1−(Δ−1)²ω)/(B₁B₂(Q⁺Q⁻)²)

    Com Q⁺ = Q⁻ = Q* e ω = ω* valem no ponto simétrico.
    """
    b1, b2, delta, d = model.b1, model.b2, model.delta, model.d
    e1 = b1 * q_minus * q_plus + q_minus + q_plus + b2
    e2 = b1 * q_minus * q_plus + b1 * b2 * (q_plus + q_minus) + b2
    kappa = b1 * b2
    qq = q_plus * q_minus
    p1 = delta * e1 * e2 / (kappa * qq)
    p2 = (
        delta
        * e1**2
        * (b2 + q_minus)
        * (1 + b1 * q_minus)
        * (1 + d * omega)
        / (kappa * q_minus**2 * q_plus)
    )
    p3 = delta * e1**4 * (1 - d**2 * omega) / (kappa * qq**2)
    return [p1, p2, p3]


def _kind_of(H: np.ndarray) -> str:
    eigenvalues = np.linalg.eigvalsh(H)
    if np.all(eigenvalues < 0):
        return "local_max"
    if np.all(eigenvalues > 0):
        return "local_min"
    return "saddle"


def _compare_minors(numeric, closed, label: str) -> List[dict]:
    rows = []
    for k, ((sign, logdet), value) in enumerate(zip(numeric, closed), start=1):
        closed_sign = float(np.sign(value))
        closed_log = float(np.log(abs(value)))
        diff = abs(closed_log - logdet)
        if closed_sign != sign or diff > MINOR_TOL:
            logger.error("Menor %d em %s diverge: numérico %s, fechado %s", k, label, (sign, logdet), value)
            raise CriticalPointError(
                f"Menor {k} em {label}: numérico {sign * np.exp(logdet):.12g}, forma fechada {value:.12g}",
                {"minor": k, "numeric": [sign, logdet], "closed": value},
            )
        rows.append({"order": k, "closed_form": value, "log_difference": diff})
    return rows


def classify_phi1_critical_points(
    model: SpinModel, data: Optional[TreePhaseData] = None
) -> dict:
    """
    Classifica os pontos críticos de φ₁ pela Hessiana de Φ₁.

    Para B₁B₂ > 0 os menores numéricos em (p⁺, p⁻) e (p*, p*) são comparados
    com P₁, P₂, P₃; o hard-core usa apenas a Hessiana numérica 2×2 em (α, β).

    Returns:
        dict com uma entrada por ponto: tipo, menores e comparação com as formas fechadas

    Raises:
        CriticalPointError: Se forma fechada e menor numérico divergirem
    """
    data = _phase_data(model, data)
    points = find_phi1_critical_points(model, data)
    closed_available = model.b1 * model.b2 > 0
    report = {"model": model.to_dict(), "regime": data.regime, "points": []}

    for index, (alpha, beta) in enumerate(points):
        point = phi1(model, alpha, beta)
        H = phi1_hessian(model, alpha, beta, point.X)
        minors = lower_right_log_minors(H)
        entry = {
            "alpha": alpha,
            "beta": beta,
            "phi1": point.phi1,
            "kind": _kind_of(H),
            "minors": [{"sign": s, "log_abs": v} for s, v in minors],
        }
        if closed_available and index != 1:
            if data.has_distinct_phases and index == 0:
                closed = phi1_minor_closed_forms(model, data.Q_plus, data.Q_minus, data.omega)
                label = "(p⁺, p⁻)"
            else:
                closed = phi1_minor_closed_forms(model, data.Q_star, data.Q_star, data.omega_star)
                label = "(p*, p*)"
            entry["closed_forms"] = _compare_minors(minors, closed, label)
        report["points"].append(entry)
    return report


def hypotheses(model: SpinModel) -> dict:
    """Hipóteses sob as quais o máximo de φ₂ em (α², β²) é conhecido."""
    d = model.d
    bound = (np.sqrt(d) - 1) / (np.sqrt(d) + 1)
    return {
        "interaction_bound": bool(np.sqrt(model.b1 * model.b2) >= bound),
        "ising_delta3": bool(model.is_ising_no_field and model.delta == 3),
        "hard_core_small_delta": bool(model.is_hard_core and model.delta in (3, 4, 5)),
    }


def phi2_minor_closed_forms(model: SpinModel, data: TreePhaseData) -> List[float]:
    """
    Formas fechadas dos menores de ordem 9, 10 e 11 de −H em (γ, δ, Y).

        P₉  = Δ⁹E₁¹⁹E₂³E₃/((B₁B₂)⁸(Q⁺Q⁻)¹²)
        P₁₀ = Δ⁹E₁²²E₂²(B₂+Q⁻)²(1+B₁Q⁻)²(1+(Δ−1)ω²)/((B₁B₂)⁸(Q⁻)¹⁴(Q⁺)¹²)
        P₁₁ = Δ⁹E₁²⁶E₂²(1−(Δ−1)²ω²)/((B₁B₂)⁸(Q⁺Q⁻)¹⁴)
    """
    e1, e2, e3 = e_values(model, data)
    b1, b2, delta, d = model.b1, model.b2, model.delta, model.d
    qp, qm, omega = data.Q_plus, data.Q_minus, data.omega
    kappa8 = (b1 * b2) ** 8
    p9 = delta**9 * e1**19 * e2**3 * e3 / (kappa8 * (qp * qm) ** 12)
    p10 = (
        delta**9
        * e1**22
        * e2**2
        * (b2 + qm) ** 2
        * (1 + b1 * qm) ** 2
        * (1 + d * omega**2)
        / (kappa8 * qm**14 * qp**12)
    )
    p11 = delta**9 * e1**26 * e2**2 * (1 - d**2 * omega**2) / (kappa8 * (qp * qm) ** 14)
    return [p9, p10, p11]


def _grid_values(model: SpinModel, alpha: float, beta: float, size: int):
    gammas = np.linspace(*gamma_range(alpha), size)
    deltas = np.linspace(*gamma_range(beta), size)
    values = np.full((size, size), -np.inf)
    for i, g in enumerate(gammas):
        for j, h in enumerate(deltas):
            values[i, j] = phi2(model, alpha, beta, g, h).phi2
    return gammas, deltas, values


def _polish(model: SpinModel, alpha: float, beta: float, start, bounds):
    def objective(v):
        try:
            value = phi2(model, alpha, beta, v[0], v[1]).phi2
            gradient = phi2_gradient(model, alpha, beta, v[0], v[1])
        except RegionError:
            return 1e300, np.zeros(2)
        if not np.isfinite(value):
            return 1e300, np.zeros(2)
        return -value, -np.asarray(gradient)

    result = minimize(
        objective,
        np.clip(start, [b[0] for b in bounds], [b[1] for b in bounds]),
        jac=True,
        method="L-BFGS-B",
        bounds=bounds,
        options={"ftol": 1e-15, "gtol": 1e-12, "maxiter": 500},
    )
    return result.x


def _refine(model: SpinModel, alpha: float, beta: float, start):
    try:
        result = root(
            lambda v: phi2_gradient(model, alpha, beta, v[0], v[1]),
            start,
            method="hybr",
            options={"xtol": 1e-14},
        )
    except (RegionError, ValueError):
        return start
    if not result.success:
        return start
    return result.x


def verify_phi2_maximum(
    model: SpinModel,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
    data: Optional[TreePhaseData] = None,
    grid: int = 41,
    starts: int = 5,
) -> dict:
    """
    Confere que o máximo global de φ₂ na região admissível está em (α², β²).

    Avalia φ₂ numa grade grid×grid, refina as `starts` melhores células com
    L-BFGS-B e o gradiente analítico e resolve ∇φ₂ = 0 a partir do melhor
    ponto. Para B₁B₂ > 0 compara os menores de ordem 9–11 com as formas
    fechadas.

    Args:
        model: Modelo de spins
        alpha, beta: Densidades externas (padrão: (p⁺, p⁻))
        data: Pontos fixos já resolvidos (opcional)
        grid: Pontos por eixo da grade inicial
        starts: Número de células refinadas

    Returns:
        dict com o máximo encontrado, o erro de posição, os menores e a identidade φ₂ = 2φ₁

    Raises:
        CompetingMaximumError: Se um ponto longe de (α², β²) atingir φ₂* − 1e−10
        CriticalPointError: Se os menores de ordem 9–11 divergirem das formas fechadas
    """
    data = _phase_data(model, data)
    at_phases = alpha is None and beta is None
    alpha = data.p_plus if alpha is None else alpha
    beta = data.p_minus if beta is None else beta

    held = hypotheses(model)
    if not any(held.values()):
        logger.warning("Nenhuma hipótese conhecida garante o máximo de φ₂ em (α², β²): %s", model.to_dict())

    target = np.array([alpha**2, beta**2])
    best_point = phi2(model, alpha, beta, *target)
    phi2_target = best_point.phi2

    gammas, deltas, values = _grid_values(model, alpha, beta, grid)
    g_lo, g_hi = gamma_range(alpha)
    d_lo, d_hi = gamma_range(beta)
    shrink_g, shrink_d = 1e-10 * (g_hi - g_lo), 1e-10 * (d_hi - d_lo)
    bounds = [(g_lo + shrink_g, g_hi - shrink_g), (d_lo + shrink_d, d_hi - shrink_d)]

    order = np.argsort(values, axis=None)[::-1][:starts]
    candidates = []
    for flat in order:
        i, j = np.unravel_index(flat, values.shape)
        if not np.isfinite(values[i, j]):
            continue
        x = _polish(model, alpha, beta, np.array([gammas[i], deltas[j]]), bounds)
        candidates.append((phi2(model, alpha, beta, *x).phi2, x))
    logger.info("Busca de φ₂: %d células na grade, %d refinamentos", grid * grid, len(candidates))

    for i, g in enumerate(gammas):
        for j, h in enumerate(deltas):
            candidates.append((values[i, j], np.array([g, h])))

    for value, x in candidates:
        if np.max(np.abs(x - target)) > _AWAY and value >= phi2_target - COMPETING_TOL:
            witness = {"gamma": float(x[0]), "delta": float(x[1]), "phi2": float(value), "phi2_target": phi2_target}
            logger.error("Máximo concorrente de φ₂: %s", witness)
            raise CompetingMaximumError(
                f"φ₂({x[0]:.10g}, {x[1]:.10g}) = {value:.15g} ≥ φ₂(α², β²) = {phi2_target:.15g}",
                witness,
            )

    best_value, best_x = max(candidates, key=lambda c: c[0])
    best_x = _refine(model, alpha, beta, best_x)
    position_error = float(np.max(np.abs(best_x - target)))

    report = {
        "alpha": alpha,
        "beta": beta,
        "hypotheses": held,
        "target": target.tolist(),
        "maximizer": best_x.tolist(),
        "position_error": position_error,
        "position_pass": position_error <= POSITION_TOL,
        "phi2_max": phi2_target,
        "grid": grid,
    }

    first = phi1(model, alpha, beta)
    report["phi1"] = first.phi1
    report["value_identity_error"] = abs(phi2_target - 2 * first.phi1)

    if model.b1 * model.b2 > 0 and best_point.Y is not None and np.all(best_point.Y > 0):
        H = phi2_hessian(model, alpha, beta, *target, best_point.Y)
        minors = lower_right_log_minors(H)[8:]
        report["minors"] = [{"order": k, "sign": s, "log_abs": v} for k, (s, v) in zip((9, 10, 11), minors)]
        if at_phases and data.has_distinct_phases:
            closed = phi2_minor_closed_forms(model, data)
            matches = [
                bool(np.sign(c) == s and abs(np.log(abs(c)) - v) <= MINOR_TOL)
                for (s, v), c in zip(minors, closed)
            ]
            report["closed_forms"] = closed
            report["minors_match"] = all(matches)
            report["minors_positive"] = all(c > 0 for c in closed[1:])
            if not all(matches):
                logger.error("Menores de −H em (α², β²) divergem das formas fechadas: %s", closed)
                raise CriticalPointError("Menores de −H em (α², β²) divergem das formas fechadas", report)
    return report


def second_moment_stationarity(
    model: SpinModel, alpha: float, beta: float, gamma: float, delta: float
) -> dict:
    """
    Sistema de estacionariedade de φ₂ na forma reduzida.

    Com r₁ = R₁/R₂, r₄ = R₄/R₂, c₁ = C₁/C₂ e c₄ = C₄/C₂, os pontos críticos
    satisfazem

        (r₁r₄)^{1/d} − 1 = (1−B₁B₂)²(c₁c₄−1)/(B₁c₁ + (B₁B₂+1) + B₂c₄)²
        (c₁c₄)^{1/d} − 1 = (1−B₁B₂)²(r₁r₄−1)/(B₁r₁ + (B₁B₂+1) + B₂r₄)²

    e caem num dos casos I (r₁r₄ = c₁c₄ = 1), II (ambos > 1) ou III (ambos < 1).

    Returns:
        dict com o gradiente, as razões, os resíduos das duas equações e o caso

    Raises:
        RegionError: Se (γ, δ) não for interior
    """
    gradient = phi2_gradient(model, alpha, beta, gamma, delta)
    marginals = overlap_marginals(alpha, beta, gamma, delta)
    solution = maximize_entropy(second_moment_matrix(model), marginals)
    R, C = solution.R, solution.C
    r1, r4 = R[0] / R[1], R[3] / R[1]
    c1, c4 = C[0] / C[1], C[3] / C[1]
    b1, b2, d = model.b1, model.b2, model.d
    kappa = b1 * b2
    rr, cc = r1 * r4, c1 * c4

    residual_rows = rr ** (1 / d) - 1 - (1 - kappa) ** 2 * (cc - 1) / (b1 * c1 + kappa + 1 + b2 * c4) ** 2
    residual_cols = cc ** (1 / d) - 1 - (1 - kappa) ** 2 * (rr - 1) / (b1 * r1 + kappa + 1 + b2 * r4) ** 2

    if abs(rr - 1) <= 1e-9 and abs(cc - 1) <= 1e-9:
        case = "I"
    elif rr > 1 and cc > 1:
        case = "II"
    elif rr < 1 and cc < 1:
        case = "III"
    else:
        case = "none"
    return {
        "gradient": list(gradient),
        "r1": r1,
        "r4": r4,
        "c1": c1,
        "c4": c4,
        "r1r4": rr,
        "c1c4": cc,
        "residuals": [float(residual_rows), float(residual_cols)],
        "symmetric_scalers": bool(
            np.isclose(R[1], R[2], rtol=1e-9) and np.isclose(C[1], C[2], rtol=1e-9)
        ),
        "case": case,
    }
