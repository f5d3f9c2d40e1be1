"""
Condicionamento em subgrafos pequenos: λᵢ, δᵢ e a soma Σ λᵢδᵢ².

Para i par, λᵢ = r(Δ,i)/i é a média limite do número de ciclos de
comprimento i e δᵢ = ω^{i/2} é o excesso relativo desse número sob a
medida planta em (p⁺, p⁻). A soma em forma fechada é

    Σ λᵢδᵢ² = −½[ln(1−(Δ−1)²ω²) + (Δ−1) ln(1−ω²)].
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from phasecrit.exact_oracle import GuardExceededError, z_alpha_beta_table
from phasecrit.models import ConditioningData, SpinModel, TreePhaseData
from phasecrit.moment_analysis import exact_first_moment
from phasecrit.random_graphs import (
    count_cycles,
    expected_cycle_rate,
    sample_bipartite_regular,
    split_seeds,
)
from phasecrit.tree_criticality import solve_tree_fixed_points

logger = logging.getLogger(__name__)

MC_MAX_N = 12

_DELTA_TOL = 1e-12


class ConditioningError(Exception):
    """Exceção lançada quando as grandezas do condicionamento não estão definidas ou são inconsistentes."""

    pass


def cycle_excess(model: SpinModel, data: TreePhaseData, i: int) -> float:
    """
    δᵢ pela forma do produto de autovalores:
    ((1−B₁B₂)√(Q⁺Q⁻/((1+B₁Q⁺)(1+B₁Q⁻)(B₂+Q⁺)(B₂+Q⁻))))^i.
    """
    b1, b2 = model.b1, model.b2
    qp, qm = data.Q_plus, data.Q_minus
    base = (1 - b1 * b2) * np.sqrt(qp * qm / ((1 + b1 * qp) * (1 + b1 * qm) * (b2 + qp) * (b2 + qm)))
    return float(base**i)


def conditioning_data(
    model: SpinModel, max_len: int = 20, data: Optional[TreePhaseData] = None
) -> ConditioningData:
    """
    Calcula λᵢ, δᵢ (i par ≤ max_len), as somas parciais de exp(Σ λᵢδᵢ²) e a forma fechada.

    A cauda da série é limitada pela soma geométrica
    ((Δ−1)ω)^{L+2}/((L+2)(1−(Δ−1)²ω²)) + (Δ−1)ω^{L+2}/((L+2)(1−ω²)).

    Args:
        model: Modelo de spins
        max_len: Maior comprimento par incluído (padrão 20)
        data: Pontos fixos já resolvidos (opcional)

    Returns:
        ConditioningData

    Raises:
        ConditioningError: Se (Δ−1)ω ≥ 1 ou se δᵢ divergir de ω^{i/2}
    """
    if max_len < 2:
        raise ValueError(f"max_len deve ser pelo menos 2: {max_len}")
    data = data or solve_tree_fixed_points(model)
    d = model.d
    omega = data.omega
    if d * omega >= 1:
        raise ConditioningError(f"(Δ−1)ω = {d * omega:.12g} ≥ 1; a série não converge")

    lambdas, deltas, partial_sums = {}, {}, []
    running = 0.0
    for i in range(2, max_len + 1, 2):
        lam_i = expected_cycle_rate(model.delta, i)
        delta_i = omega ** (i / 2)
        excess = cycle_excess(model, data, i)
        if abs(excess - delta_i) > _DELTA_TOL:
            raise ConditioningError(
                f"δ_{i} = {excess!r} diverge de ω^{{i/2}} = {delta_i!r}"
            )
        lambdas[i] = lam_i
        deltas[i] = delta_i
        running += lam_i * delta_i**2
        partial_sums.append(float(np.exp(running)))

    log_closed = -0.5 * (np.log(1 - d**2 * omega**2) + d * np.log(1 - omega**2))
    top = max_len - max_len % 2 + 2
    tail = (d * omega) ** top / (top * (1 - (d * omega) ** 2)) + d * omega**top / (top * (1 - omega**2))
    return ConditioningData(
        max_len=max_len,
        omega=omega,
        lambdas=lambdas,
        deltas=deltas,
        sum_closed_form=float(np.exp(log_closed)),
        partial_sums=partial_sums,
        tail_bound=float(tail),
    )


def falling_factorial_moment(samples, m: int) -> float:
    """Média empírica de [X]_m = X(X−1)…(X−m+1)."""
    x = np.asarray(samples, dtype=float)
    if m < 0:
        raise ValueError(f"m deve ser não negativo: {m}")
    product = np.ones_like(x)
    for k in range(m):
        product *= x - k
    return float(product.mean())


def _trial(model: SpinModel, n: int, i: int, a: int, b: int, seed: int) -> tuple:
    graph = sample_bipartite_regular(n, model.delta, seed=seed)
    log_z = z_alpha_beta_table(graph, model).log_z_table[a, b]
    cycles = count_cycles(graph, i)[i]
    return float(log_z), int(cycles)


def conditioned_cycle_moment_mc(
    model: SpinModel,
    n: int,
    i: int,
    trials: int,
    seed: Optional[int] = None,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
    workers: int = 1,
) -> dict:
    """
    Estima E[Z^{α,β}Xᵢ]/E[Z^{α,β}] por Monte Carlo sobre G(n, Δ).

    Cada tentativa usa uma semente derivada por split_seeds; Z^{α,β} vem do
    oráculo exato e Xᵢ da contagem de ciclos. O estimador é a razão das
    médias, com erro padrão pelo método delta.

    Args:
        model: Modelo de spins
        n: Tamanho de cada lado (≤ 12)
        i: Comprimento do ciclo
        trials: Número de grafos amostrados
        seed: Semente mestre
        alpha, beta: Densidades (padrão: (p⁺, p⁻) arredondados a múltiplos de 1/n)
        workers: Threads usadas nas tentativas

    Returns:
        dict com estimate, stderr, o limite λᵢ(1+δᵢ), a média de Xᵢ e
        ln da média amostral de Z^{α,β} ao lado do ln E[Z^{α,β}] exato

    Raises:
        GuardExceededError: Se n > 12
    """
    if n > MC_MAX_N:
        raise GuardExceededError(f"n = {n} excede o limite {MC_MAX_N} do Monte Carlo condicionado")
    if trials < 1:
        raise ValueError(f"trials deve ser pelo menos 1: {trials}")
    if trials < 1000:
        logger.warning("Apenas %d tentativas; o erro padrão pode ser pouco confiável", trials)
    if i % 2:
        return {"i": i, "skipped": True, "reason": "ciclos ímpares não existem em grafos bipartidos"}

    if model.b1 * model.b2 == 1:
        omega = 0.0
        default = (0.5, 0.5)
    else:
        data = solve_tree_fixed_points(model)
        omega = data.omega
        default = (data.p_plus, data.p_minus)
    alpha = default[0] if alpha is None else alpha
    beta = default[1] if beta is None else beta
    a, b = int(round(alpha * n)), int(round(beta * n))

    seeds = split_seeds(seed, trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _trial(model, n, i, a, b, s), seeds))
    else:
        results = [_trial(model, n, i, a, b, s) for s in seeds]

    log_z = np.array([r[0] for r in results])
    cycles = np.array([r[1] for r in results], dtype=float)
    shift = float(np.max(log_z))
    z = np.exp(log_z - shift)
    mean_z = z.mean()
    estimate = float(np.sum(z * cycles) / np.sum(z))
    residual = z * (cycles - estimate) / mean_z
    stderr = float(residual.std(ddof=1) / np.sqrt(trials)) if trials > 1 else float("inf")

    limit = expected_cycle_rate(model.delta, i) * (1 + omega ** (i / 2))
    return {
        "i": i,
        "n": n,
        "trials": trials,
        "alpha": a / n,
        "beta": b / n,
        "estimate": estimate,
        "stderr": stderr,
        "limit": float(limit),
        "mean_cycles": float(cycles.mean()),
        "log_mean_z": float(logsumexp(log_z) - np.log(trials)),
        "log_mean_z_stderr": float(z.std(ddof=1) / (mean_z * np.sqrt(trials))) if trials > 1 else float("inf"),
        "log_first_moment": exact_first_moment(model, n, a / n, b / n),
    }
