"""
Contagem exata de ciclos curtos em multigrafos bipartidos.
"""

import logging
from math import comb
from typing import Dict

import numpy as np

from phasecrit.models import BipartiteMultigraph
from phasecrit.random_graphs.errors import CycleGuardError

logger = logging.getLogger(__name__)

MAX_CYCLE_LEN = 12


def proper_edge_colorings(delta: int, i: int) -> int:
    """r(Δ, i) = (Δ−1)^i + (−1)^i(Δ−1): colorações próprias de um ciclo de comprimento i com Δ cores."""
    return (delta - 1) ** i + (-1) ** i * (delta - 1)


def expected_cycle_rate(delta: int, i: int) -> float:
    """
    λᵢ = r(Δ, i)/i, média limite do número de ciclos de comprimento i em G(n, Δ).

    Em grafos bipartidos só há ciclos de comprimento par; a taxa é usada
    apenas para i par.

    Raises:
        ValueError: Se i < 2
    """
    if i < 2:
        raise ValueError(f"O comprimento do ciclo deve ser pelo menos 2: {i}")
    return proper_edge_colorings(delta, i) / i


def count_cycles(graph: BipartiteMultigraph, max_len: int) -> Dict[int, int]:
    """
    Conta os ciclos de comprimento 2..max_len do multigrafo.

    Um 2-ciclo é um par não ordenado de arestas paralelas; para i ≥ 4 cada
    ciclo de vértices distintos contribui com o produto das multiplicidades
    das suas arestas. A busca parte do menor vértice do ciclo e visita só
    vértices maiores; cada ciclo aparece nas duas orientações.

    Args:
        graph: Multigrafo bipartido
        max_len: Maior comprimento contado (≤ 12)

    Returns:
        dict {i: Xᵢ}, com Xᵢ = 0 para i ímpar

    Raises:
        CycleGuardError: Se max_len > 12
    """
    if max_len > MAX_CYCLE_LEN:
        raise CycleGuardError(
            f"max_len = {max_len} excede o limite {MAX_CYCLE_LEN} da enumeração exata"
        )
    if max_len < 2:
        raise ValueError(f"max_len deve ser pelo menos 2: {max_len}")

    A = graph.adjacency()
    n = graph.n
    neighbors = [[] for _ in range(2 * n)]
    for u, v in zip(*np.nonzero(A)):
        mult = int(A[u, v])
        neighbors[u].append((n + int(v), mult))
        neighbors[n + int(v)].append((int(u), mult))

    counts = {i: 0 for i in range(2, max_len + 1)}
    counts[2] = int(sum(comb(int(m), 2) for m in A[A > 1]))

    oriented = {i: 0 for i in range(4, max_len + 1, 2)}

    def extend(start, vertex, length, weight, visited):
        for nxt, mult in neighbors[vertex]:
            if nxt == start and length + 1 >= 4 and (length + 1) % 2 == 0:
                oriented[length + 1] += weight * mult
            elif nxt > start and nxt not in visited and length + 1 < max_len:
                visited.add(nxt)
                extend(start, nxt, length + 1, weight * mult, visited)
                visited.discard(nxt)

    if max_len >= 4:
        for start in range(2 * n):
            extend(start, start, 0, 1, {start})

    for i, value in oriented.items():
        counts[i] = value // 2
    logger.info("Ciclos contados até comprimento %d em grafo com n=%d", max_len, n)
    return counts
