"""
Dinâmica de Glauber (heat-bath) em multigrafos bipartidos.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from phasecrit.exact_oracle.enumeration import GraphLike, _log_params, as_counts
from phasecrit.models import SpinModel
from phasecrit.random_graphs.sampling import RNG_NAME, make_rng
from phasecrit.utils.config import get_default_seed

logger = logging.getLogger(__name__)

_CHUNK = 1 << 16


def _neighbor_lists(A: np.ndarray) -> list:
    """Vizinhos com repetição por multiplicidade na numeração 0..n₁+n₂−1."""
    n1, n2 = A.shape
    neighbors = [[] for _ in range(n1 + n2)]
    for u, v in zip(*np.nonzero(A)):
        for _ in range(int(A[u, v])):
            neighbors[u].append(n1 + int(v))
            neighbors[n1 + int(v)].append(int(u))
    return neighbors


def _wait_times(signs: np.ndarray) -> np.ndarray:
    """Intervalos entre trocas do sinal não nulo de (#−1 em V₁ − #−1 em V₂)."""
    nonzero = np.flatnonzero(signs)
    if nonzero.size < 2:
        return np.array([], dtype=np.int64)
    values = signs[nonzero]
    flips = nonzero[1:][values[1:] != values[:-1]]
    return np.diff(np.concatenate(([nonzero[0]], flips)))


def glauber_run(
    graph: GraphLike,
    model: SpinModel,
    steps: int,
    seed: Optional[int] = None,
    initial: Optional[Sequence[int]] = None,
) -> dict:
    """
    Simula a dinâmica heat-bath de sítio único.

    A cada passo um vértice uniforme v é atualizado com
    P(σ_v = −1) = λB₁^{k₋} / (λB₁^{k₋} + B₂^{k₊}), onde k₋ e k₊ contam as
    arestas até vizinhos −1 e +1. A razão é avaliada em escala log.

    Args:
        graph: Multigrafo bipartido ou matriz de multiplicidades
        model: Modelo de spins
        steps: Número de passos (≥ 1)
        seed: Semente (padrão: PHASECRIT_SEED)
        initial: Configuração inicial ±1 (padrão: uniforme pelo gerador)

    Returns:
        dict com a trajetória de sinais, a fração de passos em estados
        quase balanceados (|#−1 em V₁ − #−1 em V₂| ≤ 1), os tempos entre
        trocas de sinal e a frequência de −1 de cada vértice
    """
    if steps < 1:
        raise ValueError(f"steps deve ser pelo menos 1: {steps}")
    A = as_counts(graph)
    n1, n2 = A.shape
    total = n1 + n2
    seed = get_default_seed() if seed is None else seed
    rng = make_rng(seed)
    neighbors = _neighbor_lists(A)

    if initial is None:
        minus = rng.random(total) < 0.5
    else:
        initial = np.asarray(initial)
        if initial.shape != (total,) or not np.all(np.isin(initial, (-1, 1))):
            raise ValueError(f"initial deve ser um vetor ±1 com {total} entradas")
        minus = initial == -1
    minus = minus.tolist()

    log_b1, log_b2, log_lam = _log_params(model)
    left_minus = sum(minus[:n1])
    right_minus = sum(minus[n1:])
    occupancy = np.zeros(total)
    last_change = np.zeros(total, dtype=np.int64)
    signs = np.empty(steps, dtype=np.int8)
    balanced = 0

    t = 0
    while t < steps:
        size = min(_CHUNK, steps - t)
        vertices = rng.integers(0, total, size=size)
        uniforms = rng.random(size)
        for v, u in zip(vertices.tolist(), uniforms.tolist()):
            k_minus = sum(1 for w in neighbors[v] if minus[w])
            k_plus = len(neighbors[v]) - k_minus
            log_minus = log_lam + (k_minus * log_b1 if k_minus else 0.0)
            log_plus = k_plus * log_b2
            new = u < np.exp(log_minus - np.logaddexp(log_minus, log_plus))
            if new != minus[v]:
                if minus[v]:
                    occupancy[v] += t - last_change[v]
                last_change[v] = t
                minus[v] = new
                delta = 1 if new else -1
                if v < n1:
                    left_minus += delta
                else:
                    right_minus += delta
            gap = left_minus - right_minus
            signs[t] = (gap > 0) - (gap < 0)
            balanced += abs(gap) <= 1
            t += 1

    for v in range(total):
        if minus[v]:
            occupancy[v] += steps - last_change[v]
    waits = _wait_times(signs)
    logger.info("Glauber: %d passos, %d trocas de sinal", steps, waits.size)
    return {
        "steps": steps,
        "seed": seed,
        "rng": RNG_NAME,
        "signs": signs,
        "balance_fraction": balanced / steps,
        "sign_flips": int(waits.size),
        "wait_times": waits,
        "median_wait": float(np.median(waits)) if waits.size else float("inf"),
        "minus_frequency": occupancy / steps,
        "final": np.where(np.array(minus), -1, 1),
    }
