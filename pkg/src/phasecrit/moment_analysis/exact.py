"""
Momentos exatos em n finito, avaliados em domínio logarítmico.

Coeficientes binomiais e multinomiais são sempre tratados via log-gamma;
termos com B₁^k, k > 0, são omitidos quando B₁ = 0.
"""

import itertools
import logging
from typing import Sequence, Tuple

import numpy as np
from scipy.special import gammaln, logsumexp

from phasecrit.models import SpinModel
from phasecrit.moment_analysis.errors import RoundingError

logger = logging.getLogger(__name__)

SECOND_MOMENT_MAX_N = 40

_INTEGRAL_TOL = 1e-9


def log_binom(n, k):
    """ln C(n, k) vetorizado; −inf fora de 0 ≤ k ≤ n."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    valid = (k >= 0) & (k <= n)
    with np.errstate(invalid="ignore"):
        value = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    return np.where(valid, value, -np.inf)


def as_count(n: int, fraction: float, name: str) -> int:
    """
    Converte uma fração em contagem inteira, exigindo fraction·n inteiro.

    Raises:
        RoundingError: Se fraction·n não for inteiro
    """
    value = fraction * n
    count = int(round(value))
    if abs(value - count) > _INTEGRAL_TOL * max(1.0, abs(value)):
        raise RoundingError(
            f"{name}·n = {value!r} não é inteiro; arredonde com round_fractions antes"
        )
    return count


def round_fractions(n: int, *fractions: float) -> Tuple[float, ...]:
    """
    Arredonda cada fração para o múltiplo de 1/n mais próximo.

    Returns:
        Frações efetivamente usadas
    """
    rounded = tuple(round(f * n) / n for f in fractions)
    if any(abs(r - f) > 0 for r, f in zip(rounded, fractions)):
        logger.warning("Frações arredondadas para n=%d: %s -> %s", n, fractions, rounded)
    return rounded


def _log_weights(model: SpinModel) -> Tuple[float, float]:
    log_b1 = np.log(model.b1) if model.b1 > 0 else -np.inf
    return log_b1, np.log(model.b2)


def log_single_matching_sum(model: SpinModel, n: int, a: int, b: int) -> float:
    """
    ln Σ_k C(a,k)·C(n−a, b−k)/C(n,b)·B₁^k·B₂^{n−a−b+k}.

    É a contribuição esperada de um único emparelhamento para uma
    configuração com a vértices −1 em V₁ e b em V₂.
    """
    log_b1, log_b2 = _log_weights(model)
    k_min, k_max = max(0, a + b - n), min(a, b)
    if k_min > k_max:
        return float("-inf")
    if model.b1 == 0:
        if k_min > 0:
            return float("-inf")
        k_max = 0
    k = np.arange(k_min, k_max + 1)
    terms = log_binom(a, k) + log_binom(n - a, b - k) - log_binom(n, b) + (n - a - b + k) * log_b2
    if model.b1 > 0:
        terms = terms + k * log_b1
    return float(logsumexp(terms))


def exact_first_moment(model: SpinModel, n: int, alpha: float, beta: float) -> float:
    """
    ln E[Z^{α,β}] exato sobre o ensemble de grafos bipartidos Δ-regulares.

    E[Z^{α,β}] = λ^{(α+β)n}·C(n,αn)·C(n,βn)·(Σ_k κ_k)^Δ.

    Args:
        model: Modelo de spins (Δ ≥ 1)
        n: Tamanho de cada lado
        alpha, beta: Frações com αn, βn inteiros

    Returns:
        Logaritmo natural do primeiro momento (−inf se nulo)

    Raises:
        RoundingError: Se αn ou βn não forem inteiros
    """
    a = as_count(n, alpha, "alpha")
    b = as_count(n, beta, "beta")
    inner = log_single_matching_sum(model, n, a, b)
    if not np.isfinite(inner):
        return float("-inf")
    return float(
        (a + b) * np.log(model.lam)
        + log_binom(n, a)
        + log_binom(n, b)
        + model.delta * inner
    )


def _compositions(total: int, caps: Sequence[int]):
    """Vetores inteiros não negativos com soma total e entradas limitadas por caps."""
    head = [range(0, min(total, c) + 1) for c in caps[:-1]]
    for prefix in itertools.product(*head):
        last = total - sum(prefix)
        if 0 <= last <= caps[-1]:
            yield prefix + (last,)


def _contingency_tables(rows: Sequence[int], cols: Sequence[int]):
    """Tabelas inteiras não negativas com somas de linha rows e de coluna cols."""

    def recurse(i, remaining, acc):
        if i == len(rows) - 1:
            if sum(remaining) == rows[-1]:
                yield acc + [tuple(remaining)]
            return
        for row in _compositions(rows[i], remaining):
            yield from recurse(i + 1, [r - y for r, y in zip(remaining, row)], acc + [row])

    yield from recurse(0, list(cols), [])


def exact_second_moment_term(
    model: SpinModel, n: int, alpha: float, beta: float, gamma: float, delta: float
) -> float:
    """
    ln E[Y^{γ,δ}] exato por enumeração das tabelas 4×4 de contagens.

    Args:
        model: Modelo de spins
        n: Tamanho de cada lado (n ≤ 40)
        alpha, beta, gamma, delta: Frações com αn, βn, γn, δn inteiros

    Returns:
        Logaritmo natural do termo do segundo momento (−inf se nulo)

    Raises:
        RoundingError: Se alguma fração vezes n não for inteira
        ValueError: Se n exceder o limite da enumeração
    """
    if n > SECOND_MOMENT_MAX_N:
        raise ValueError(
            f"n = {n} excede o limite {SECOND_MOMENT_MAX_N} da enumeração exata; "
            "use a validação Monte Carlo do oráculo"
        )
    a = as_count(n, alpha, "alpha")
    b = as_count(n, beta, "beta")
    g = as_count(n, gamma, "gamma")
    h = as_count(n, delta, "delta")
    rows = [g, a - g, a - g, n - 2 * a + g]
    cols = [h, b - h, b - h, n - 2 * b + h]
    if min(rows) < 0 or min(cols) < 0:
        return float("-inf")

    m1 = model.edge_matrix()
    with np.errstate(divide="ignore"):
        log_m = np.log(np.kron(m1, m1))
    log_fact = gammaln(np.arange(n + 1) + 1.0)

    base = float(np.sum(log_fact[rows]) + np.sum(log_fact[cols]) - log_fact[n])
    terms = []
    count = 0
    for table in _contingency_tables(rows, cols):
        count += 1
        y = np.array(table)
        positive = y > 0
        if np.any(np.isneginf(log_m[positive])):
            continue
        terms.append(base - np.sum(log_fact[y]) + np.sum(y[positive] * log_m[positive]))
    logger.info("Segundo momento exato: %d tabelas enumeradas para n=%d", count, n)
    if not terms:
        return float("-inf")

    outer = (
        2 * (a + b) * np.log(model.lam)
        + log_binom(n, a)
        + log_binom(n, b)
        + log_binom(a, g)
        + log_binom(n - a, a - g)
        + log_binom(b, h)
        + log_binom(n - b, b - h)
    )
    return float(outer + model.delta * logsumexp(terms))


def exact_gadget_first_moment(
    model: SpinModel, n: int, m_prime: int, a: int, b: int, eta: Sequence[int]
) -> float:
    """
    ln E[Z^{α,β}(η)] exato para o grafo do gadget sem as árvores.

    O grafo tem Δ−1 emparelhamentos entre W⁺∪U⁺ e W⁻∪U⁻ (n + m′ vértices
    por lado) e um emparelhamento entre W⁺ e W⁻; os spins de U são fixados
    por η = (η₁⁻, η₁⁺, η₂⁻, η₂⁺).

    Args:
        model: Modelo de spins
        n: Tamanho de W⁺ e W⁻
        m_prime: Tamanho de U⁺ e U⁻
        a, b: Números de spins −1 em W⁺ e W⁻
        eta: Contagens de spins em U

    Returns:
        Logaritmo natural do primeiro momento condicionado
    """
    eta1_minus, eta1_plus, eta2_minus, eta2_plus = validate_eta(eta)
    if eta1_minus + eta1_plus != m_prime:
        raise ValueError(f"η₁⁻ + η₁⁺ deve ser m′ = {m_prime}")
    log_b1, log_b2 = _log_weights(model)

    left_minus = a + eta1_minus
    right_minus = b + eta2_minus
    size = n + m_prime
    x_max = min(left_minus, right_minus)
    if model.b1 == 0:
        x_max = 0
    x = np.arange(0, x_max + 1)
    gbar_terms = (
        log_binom(left_minus, x)
        + log_binom(size - left_minus, right_minus - x)
        - log_binom(size, right_minus)
        + (size - left_minus - right_minus + x) * log_b2
    )
    if model.b1 > 0:
        gbar_terms = gbar_terms + x * log_b1
    gbar = logsumexp(gbar_terms)
    single = log_single_matching_sum(model, n, a, b)
    if not np.isfinite(gbar) or not np.isfinite(single):
        return float("-inf")
    return float(
        (a + b + eta1_minus + eta2_minus) * np.log(model.lam)
        + log_binom(n, a)
        + log_binom(n, b)
        + (model.delta - 1) * gbar
        + single
    )


def validate_eta(eta: Sequence[int]) -> Tuple[int, int, int, int]:
    """
    Valida (η₁⁻, η₁⁺, η₂⁻, η₂⁺): inteiros não negativos com η₁⁻+η₁⁺ = η₂⁻+η₂⁺.

    Raises:
        ValueError: Se as contagens forem inválidas
    """
    if len(eta) != 4:
        raise ValueError(f"eta deve ter quatro contagens: {eta}")
    values = tuple(int(v) for v in eta)
    if any(v != e for v, e in zip(values, eta)) or min(values) < 0:
        raise ValueError(f"Contagens η devem ser inteiros não negativos: {eta}")
    if values[0] + values[1] != values[2] + values[3]:
        raise ValueError(f"η₁⁻ + η₁⁺ deve ser igual a η₂⁻ + η₂⁺: {eta}")
    return values
