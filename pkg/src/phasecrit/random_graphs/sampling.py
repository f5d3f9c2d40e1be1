"""
Amostradores semeados de G(n, Δ) e do gadget.

Todos os amostradores usam numpy.random.Generator (PCG64); a identidade do
gerador é gravada em cada grafo produzido como RNG_NAME.
"""

import logging
import math
from typing import List, Optional

import numpy as np

from phasecrit.models import BipartiteMultigraph, GadgetGraph, GadgetTree
from phasecrit.utils.config import get_default_seed

logger = logging.getLogger(__name__)

RNG_NAME = "numpy-pcg64-v1"

_LOG_EPS = 1e-9


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """Gerador PCG64 para a semente dada (padrão: PHASECRIT_SEED)."""
    return np.random.default_rng(get_default_seed() if seed is None else seed)


def split_seeds(seed: Optional[int], k: int) -> List[int]:
    """
    Deriva k sementes independentes a partir de uma semente mestre.

    Usa numpy.random.SeedSequence(seed).spawn(k) e extrai 64 bits de estado
    de cada filho; a mesma (seed, k) produz sempre a mesma lista.

    Args:
        seed: Semente mestre (padrão: PHASECRIT_SEED)
        k: Número de sementes

    Returns:
        Lista de k inteiros não negativos
    """
    if k < 0:
        raise ValueError(f"k deve ser não negativo: {k}")
    master = np.random.SeedSequence(get_default_seed() if seed is None else seed)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in master.spawn(k)]


def sample_bipartite_regular(n: int, delta: int, seed: Optional[int] = None) -> BipartiteMultigraph:
    """
    Amostra G ∼ G(n, Δ) como união de Δ emparelhamentos perfeitos uniformes.

    Args:
        n: Tamanho de cada lado
        delta: Número de emparelhamentos
        seed: Semente (padrão: PHASECRIT_SEED)

    Returns:
        BipartiteMultigraph com a semente e o gerador registrados
    """
    if n < 1 or delta < 1:
        raise ValueError(f"n e delta devem ser positivos: n={n}, delta={delta}")
    seed = get_default_seed() if seed is None else seed
    rng = make_rng(seed)
    matchings = [rng.permutation(n) for _ in range(delta)]
    return BipartiteMultigraph(n=n, delta=delta, matchings=matchings, seed=seed, rng=RNG_NAME)


def gadget_parameters(n: int, delta: int, theta: float, psi: float) -> tuple:
    """
    Parâmetros (k, ℓ, m′) do gadget.

    k = (Δ−1)^{⌊θ log_{Δ−1} n⌋}, ℓ = 2⌊(ψ/2) log_{Δ−1} n⌋ e m′ = k(Δ−1)^ℓ.
    """
    if delta < 3:
        raise ValueError(f"O gadget exige delta >= 3: {delta}")
    if theta <= 0 or psi <= 0:
        raise ValueError(f"theta e psi devem ser positivos: theta={theta}, psi={psi}")
    d = delta - 1
    log_n = math.log(n) / math.log(d)
    k = d ** math.floor(theta * log_n + _LOG_EPS)
    ell = 2 * math.floor(psi / 2 * log_n + _LOG_EPS)
    return k, ell, k * d**ell


def _build_tree(side: str, leaves: List[int], d: int, ell: int, next_id: int) -> tuple:
    """Árvore d-ária de profundidade ell com folhas dadas; devolve (árvore, próximo id)."""
    if ell == 0:
        return GadgetTree(side=side, root=leaves[0], internal=[], leaves=list(leaves), edges=[]), next_id
    levels = []
    for depth in range(ell):
        size = d**depth
        levels.append(list(range(next_id, next_id + size)))
        next_id += size
    levels.append(list(leaves))
    edges = []
    for depth in range(ell):
        for index, parent in enumerate(levels[depth]):
            for child in levels[depth + 1][index * d : (index + 1) * d]:
                edges.append((parent, child))
    internal = [v for level in levels[:-1] for v in level]
    return GadgetTree(side=side, root=levels[0][0], internal=internal, leaves=list(leaves), edges=edges), next_id


def sample_gadget(
    n: int, delta: int, theta: float, psi: float, seed: Optional[int] = None
) -> GadgetGraph:
    """
    Amostra o gadget H.

    gbar recebe Δ−1 emparelhamentos uniformes entre W₊∪U₊ e W₋∪U₋ e um
    emparelhamento uniforme entre W₊ e W₋; em seguida k árvores
    (Δ−1)-árias de profundidade ℓ são anexadas por lado, com as folhas
    atribuídas a U em ordem de índice.

    Args:
        n: Tamanho de W₊ e W₋
        delta: Grau Δ ≥ 3
        theta, psi: Parâmetros do gadget (recomendado 0 < θ, ψ < 1/8)
        seed: Semente (padrão: PHASECRIT_SEED)

    Returns:
        GadgetGraph com asymptotic_warning quando m′ ≥ n^{1/4}
    """
    k, ell, m_prime = gadget_parameters(n, delta, theta, psi)
    warning = m_prime >= n**0.25
    if warning:
        logger.warning(
            "Gadget fora do regime assintótico: m′ = %d ≥ n^{1/4} = %.3f", m_prime, n**0.25
        )
    seed = get_default_seed() if seed is None else seed
    rng = make_rng(seed)
    side = n + m_prime
    matchings = [rng.permutation(side) for _ in range(delta - 1)]
    w_matching = rng.permutation(n)

    d = delta - 1
    per_tree = d**ell
    next_id = 2 * side
    trees = []
    for label, offset in (("+", n), ("-", side + n)):
        for t in range(k):
            leaves = list(range(offset + t * per_tree, offset + (t + 1) * per_tree))
            tree, next_id = _build_tree(label, leaves, d, ell, next_id)
            trees.append(tree)

    return GadgetGraph(
        n=n,
        delta=delta,
        m_prime=m_prime,
        k=k,
        ell=ell,
        theta=theta,
        psi=psi,
        matchings=matchings,
        w_matching=w_matching,
        trees=trees,
        seed=seed,
        rng=RNG_NAME,
        asymptotic_warning=warning,
    )


def phase(sigma, gadget: GadgetGraph) -> str:
    """
    Fase de σ: "+" se W₊ tem mais spins −1 que W₋, senão "-" (empates incluídos).

    Args:
        sigma: Spins ±1 sobre os vértices de H na numeração global
        gadget: Gadget de referência
    """
    sigma = np.asarray(sigma)
    if sigma.shape != (gadget.num_vertices,):
        raise ValueError(f"sigma deve ter {gadget.num_vertices} entradas, recebeu {sigma.shape}")
    N = gadget.side_size
    minus_plus = int(np.sum(sigma[: gadget.n] == -1))
    minus_minus = int(np.sum(sigma[N : N + gadget.n] == -1))
    return "+" if minus_plus > minus_minus else "-"
