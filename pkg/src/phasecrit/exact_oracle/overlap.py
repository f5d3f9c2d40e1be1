"""
Estatísticas de pares de configurações agrupadas pela sobreposição.
"""

import itertools
import logging

import numpy as np
from scipy.special import logsumexp

from phasecrit.exact_oracle.enumeration import GraphLike, as_counts
from phasecrit.exact_oracle.errors import GuardExceededError
from phasecrit.models import SpinModel
from phasecrit.moment_analysis.exact import as_count

logger = logging.getLogger(__name__)

OVERLAP_MAX_N = 10


def _subset_indicators(n: int, size: int) -> np.ndarray:
    combos = list(itertools.combinations(range(n), size))
    rows = np.zeros((len(combos), n), dtype=np.int64)
    for r, combo in enumerate(combos):
        rows[r, list(combo)] = 1
    return rows


def _overlap_masks(indicators: np.ndarray, size: int) -> list:
    overlap = indicators @ indicators.T
    return [overlap == k for k in range(size + 1)]


def pair_overlap_statistics(graph: GraphLike, model: SpinModel, alpha: float, beta: float) -> dict:
    """
    Soma exata de w(σ₁)w(σ₂) sobre pares em Σ^{α,β}, agrupada por (γn, δn).

    γn = |S₁ ∩ S₂| e δn = |T₁ ∩ T₂|, onde Sₖ ⊆ V₁ e Tₖ ⊆ V₂ são os
    vértices com spin −1 em σₖ.

    Args:
        graph: Multigrafo bipartido ou matriz de multiplicidades
        model: Modelo de spins
        alpha, beta: Frações com αn₁, βn₂ inteiros

    Returns:
        dict com a tabela log_table[γn, δn] e as contagens a, b

    Raises:
        GuardExceededError: Se algum lado tiver mais de 10 vértices
    """
    A = as_counts(graph)
    n1, n2 = A.shape
    if max(n1, n2) > OVERLAP_MAX_N:
        raise GuardExceededError(
            f"Lados {A.shape} excedem o limite {OVERLAP_MAX_N} da enumeração de pares"
        )
    a = as_count(n1, alpha, "alpha")
    b = as_count(n2, beta, "beta")
    left = _subset_indicators(n1, a)
    right = _subset_indicators(n2, b)

    log_b1 = np.log(model.b1) if model.b1 > 0 else -np.inf
    minus_edges = left @ A @ right.T
    plus_edges = (1 - left) @ A @ (1 - right).T
    log_w = (a + b) * np.log(model.lam) + plus_edges * np.log(model.b2)
    if np.isfinite(log_b1):
        log_w = log_w + minus_edges * log_b1
    else:
        log_w = np.where(minus_edges > 0, -np.inf, log_w)

    shift = np.max(log_w)
    if not np.isfinite(shift):
        table = np.full((a + 1, b + 1), -np.inf)
        return {"a": a, "b": b, "log_table": table, "log_total": float("-inf")}
    W = np.exp(log_w - shift)

    left_masks = _overlap_masks(left, a)
    right_masks = _overlap_masks(right, b)
    table = np.full((a + 1, b + 1), -np.inf)
    with np.errstate(divide="ignore"):
        for h, right_mask in enumerate(right_masks):
            inner = W @ right_mask.astype(float) @ W.T
            for g, left_mask in enumerate(left_masks):
                total = float(np.sum(inner[left_mask]))
                table[g, h] = np.log(total) + 2 * shift
    logger.info("Estatísticas de pares: %d×%d configurações", left.shape[0], right.shape[0])
    return {"a": a, "b": b, "log_table": table, "log_total": float(logsumexp(table))}
