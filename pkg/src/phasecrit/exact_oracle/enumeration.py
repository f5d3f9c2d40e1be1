"""
Enumeração exata de funções de partição em grafos bipartidos pequenos.

Os spins de V₁ são enumerados em blocos vetorizados; dado σ₁, os vértices
de V₂ são independentes e cada um contribui com
λ·B₁^{k_v} (spin −1) ou B₂^{deg_v − k_v} (spin +1), onde k_v conta as
arestas até vizinhos −1. Para tabelas Z^{α,β} o lado V₂ vira um polinômio
na contagem de spins −1, acumulado em domínio logarítmico.
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np
from scipy.special import logsumexp

from phasecrit.exact_oracle.errors import GuardExceededError
from phasecrit.models import BipartiteMultigraph, GadgetGraph, GibbsSummary, SpinModel
from phasecrit.moment_analysis.exact import validate_eta
from phasecrit.tree_criticality import solve_tree_fixed_points

logger = logging.getLogger(__name__)

PARTITION_MAX_N = 24
TABLE_MAX_N = 20
GADGET_MAX_SIDE = 18

_BLOCK_BITS = 14

GraphLike = Union[BipartiteMultigraph, np.ndarray]


def as_counts(graph: GraphLike) -> np.ndarray:
    """Matriz n₁×n₂ de multiplicidades de um multigrafo ou de uma matriz dada."""
    if isinstance(graph, BipartiteMultigraph):
        return graph.adjacency()
    A = np.asarray(graph)
    if A.ndim != 2 or np.any(A < 0) or not np.issubdtype(A.dtype, np.integer):
        raise ValueError("O grafo deve ser uma matriz de contagens inteiras não negativas")
    return A.astype(np.int64)


def _times_log(k: np.ndarray, log_b: float) -> np.ndarray:
    """k·ln B com 0·ln 0 = 0."""
    if np.isfinite(log_b):
        return k * log_b
    return np.where(k > 0, -np.inf, 0.0)


def _log_params(model: SpinModel):
    log_b1 = np.log(model.b1) if model.b1 > 0 else -np.inf
    return log_b1, np.log(model.b2), np.log(model.lam)


def _bit_blocks(n_free: int):
    """Blocos de linhas de bits para todas as 2^n_free atribuições."""
    total = 1 << n_free
    step = 1 << min(n_free, _BLOCK_BITS)
    shifts = np.arange(n_free, dtype=np.int64)
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        yield ((idx[:, None] >> shifts) & 1).astype(bool)


def _clamp_vector(clamp: Optional[Sequence[int]], size: int) -> np.ndarray:
    if clamp is None:
        return np.zeros(size, dtype=np.int64)
    clamp = np.asarray(clamp, dtype=np.int64)
    if clamp.shape != (size,) or not np.all(np.isin(clamp, (-1, 0, 1))):
        raise ValueError(f"Fixação deve ser um vetor de {size} entradas em {{-1, 0, +1}}")
    return clamp


def _enumerate(
    A: np.ndarray,
    model: SpinModel,
    left_clamp: Optional[Sequence[int]] = None,
    right_clamp: Optional[Sequence[int]] = None,
    table: bool = False,
):
    """
    Soma os pesos de todas as configurações compatíveis com as fixações.

    Returns:
        log Z (table=False) ou a tabela log Z indexada pelas contagens de −1
        entre os vértices livres de cada lado (table=True)
    """
    n1, n2 = A.shape
    log_b1, log_b2, log_lam = _log_params(model)
    lc = _clamp_vector(left_clamp, n1)
    rc = _clamp_vector(right_clamp, n2)
    free_left = np.flatnonzero(lc == 0)
    free_right = np.flatnonzero(rc == 0)
    fixed_minus, fixed_plus = rc == -1, rc == 1
    deg = A.sum(axis=0)

    result = np.full((free_left.size + 1, free_right.size + 1), -np.inf) if table else []
    for bits in _bit_blocks(free_left.size):
        S = np.zeros((bits.shape[0], n1), dtype=bool)
        S[:, free_left] = bits
        S[:, lc == -1] = True
        K = S.astype(np.int64) @ A
        minus = log_lam + _times_log(K, log_b1)
        plus = _times_log(deg - K, log_b2)
        const = (
            log_lam * S.sum(axis=1)
            + minus[:, fixed_minus].sum(axis=1)
            + plus[:, fixed_plus].sum(axis=1)
        )
        if not table:
            rows = const + np.logaddexp(minus[:, free_right], plus[:, free_right]).sum(axis=1)
            result.append(logsumexp(rows))
            continue

        P = np.full((bits.shape[0], free_right.size + 1), -np.inf)
        P[:, 0] = 0.0
        for count, v in enumerate(free_right, start=1):
            shifted = P[:, : count] + minus[:, v][:, None]
            P[:, : count + 1] = P[:, : count + 1] + plus[:, v][:, None]
            P[:, 1 : count + 1] = np.logaddexp(P[:, 1 : count + 1], shifted)
        rows = const[:, None] + P
        counts = bits.sum(axis=1)
        for a in np.unique(counts):
            result[a] = np.logaddexp(result[a], logsumexp(rows[counts == a], axis=0))

    if table:
        return result
    return float(logsumexp(result))


def partition_function(graph: GraphLike, model: SpinModel) -> float:
    """
    log Z exato por enumeração de V₁ (custo O(2^{n₁}·n₁n₂)).

    Args:
        graph: Multigrafo bipartido ou matriz de multiplicidades n₁×n₂
        model: Modelo de spins

    Returns:
        Logaritmo natural da função de partição

    Raises:
        GuardExceededError: Se n₁ > 24
    """
    A = as_counts(graph)
    if A.shape[0] > PARTITION_MAX_N:
        raise GuardExceededError(
            f"n₁ = {A.shape[0]} excede o limite {PARTITION_MAX_N} da função de partição exata"
        )
    return _enumerate(A, model)


def z_alpha_beta_table(graph: GraphLike, model: SpinModel) -> GibbsSummary:
    """
    Tabela exata log Z^{α,β} indexada por (αn₁, βn₂).

    Raises:
        GuardExceededError: Se algum lado tiver mais de 20 vértices
    """
    A = as_counts(graph)
    if max(A.shape) > TABLE_MAX_N:
        raise GuardExceededError(
            f"Lados {A.shape} excedem o limite {TABLE_MAX_N} da tabela Z^{{α,β}}"
        )
    table = _enumerate(A, model, table=True)
    logger.info("Tabela Z^{α,β} calculada para lados %s", A.shape)
    return GibbsSummary(logZ=float(logsumexp(table)), log_z_table=table)


def vertex_marginals(graph: GraphLike, model: SpinModel) -> tuple:
    """
    Probabilidades exatas μ(σ_v = −1) de cada vértice.

    Returns:
        (marginais de V₁, marginais de V₂)

    Raises:
        GuardExceededError: Se n₁ > 24
    """
    A = as_counts(graph)
    log_z = partition_function(A, model)
    n1, n2 = A.shape
    log_b1, log_b2, log_lam = _log_params(model)
    deg = A.sum(axis=0)
    left = np.zeros(n1)
    right = np.zeros(n2)
    for S in _bit_blocks(n1):
        K = S.astype(np.int64) @ A
        minus = log_lam + _times_log(K, log_b1)
        plus = _times_log(deg - K, log_b2)
        both = np.logaddexp(minus, plus)
        weights = np.exp(log_lam * S.sum(axis=1) + both.sum(axis=1) - log_z)
        left += weights @ S
        right += weights @ np.exp(minus - both)
    return left, right


def gadget_conditional_Z(gadget: GadgetGraph, model: SpinModel, eta: Sequence[int]) -> GibbsSummary:
    """
    Tabela log Z^{α,β}(η) de gbar com os spins de U fixados.

    Os η₁⁻ primeiros vértices de U₊ e os η₂⁻ primeiros de U₋ (em ordem de
    índice) recebem spin −1; os demais vértices de U recebem +1. A tabela é
    indexada pelas contagens de −1 em W₊ e W₋.

    Raises:
        GuardExceededError: Se n + m′ > 18
        ValueError: Se η for incompatível com m′
    """
    eta1_minus, eta1_plus, eta2_minus, eta2_plus = validate_eta(eta)
    if eta1_minus + eta1_plus != gadget.m_prime:
        raise ValueError(f"η₁⁻ + η₁⁺ deve ser m′ = {gadget.m_prime}: {eta}")
    N = gadget.side_size
    if N > GADGET_MAX_SIDE:
        raise GuardExceededError(
            f"n + m′ = {N} excede o limite {GADGET_MAX_SIDE} do oráculo do gadget"
        )
    left = np.zeros(N, dtype=np.int64)
    right = np.zeros(N, dtype=np.int64)
    left[gadget.n :] = 1
    right[gadget.n :] = 1
    left[gadget.n : gadget.n + eta1_minus] = -1
    right[gadget.n : gadget.n + eta2_minus] = -1
    table = _enumerate(gadget.gbar_adjacency(), model, left, right, table=True)
    return GibbsSummary(logZ=float(logsumexp(table)), log_z_table=table)


def bimodality_report(
    graph: GraphLike,
    model: SpinModel,
    rho: Optional[float] = None,
    summary: Optional[GibbsSummary] = None,
) -> dict:
    """
    Compara a massa das configurações balanceadas com a de Σ^ρ = {|α−β| ≥ ρ}.

    Args:
        graph: Grafo (ignorado se summary for dado)
        model: Modelo de spins
        rho: Desequilíbrio mínimo (padrão: |p⁺ − p⁻|/2)
        summary: Tabela já calculada (opcional)

    Returns:
        dict com mu_bal, mu_rho, log_ratio e ratio = μ(Σ^Bal)/μ(Σ^ρ)

    Raises:
        ValueError: Se ρ ∉ (0, 1)
    """
    if rho is None:
        data = solve_tree_fixed_points(model)
        rho = abs(data.p_plus - data.p_minus) / 2
    if not 0 < rho < 1:
        raise ValueError(f"rho deve estar em (0, 1): {rho}")
    summary = summary or z_alpha_beta_table(graph, model)
    log_bal = summary.log_mu_balanced
    log_rho = summary.log_mu_unbalanced(rho)
    log_ratio = log_bal - log_rho if np.isfinite(log_rho) else np.inf
    return {
        "rho": rho,
        "mu_bal": float(np.exp(log_bal)),
        "mu_rho": float(np.exp(log_rho)),
        "log_ratio": float(log_ratio),
        "ratio": float(np.exp(log_ratio)),
        "dominant_cell": list(summary.dominant_cell),
    }
