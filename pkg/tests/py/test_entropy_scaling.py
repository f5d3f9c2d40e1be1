"""
Testes para o módulo de maximização de entropia com marginais prescritas.
"""

import numpy as np
import pytest

from phasecrit.entropy_scaling import (
    InfeasibleMarginalsError,
    ScalingConvergenceError,
    effective_support,
    entropy_objective,
    gstar_gradient,
    maximize_entropy,
    quadratic_decay_check,
)
from phasecrit.models import MarginalSpec


HARD_CORE_M = np.array([[0.0, 1.0], [1.0, 1.0]])


def test_matriz_constante_da_produto_das_marginais():
    """Testa que M ≡ 1 leva ao maximizador Z = αβᵀ."""
    marginals = MarginalSpec.binary(0.3, 0.4)
    solution = maximize_entropy(np.ones((2, 2)), marginals)

    expected = np.outer([0.3, 0.7], [0.4, 0.6])
    np.testing.assert_allclose(solution.Z_star, expected, rtol=1e-12)
    assert solution.R[0] == pytest.approx(1.0)


def test_marginais_do_maximizador():
    """Testa que Z* atinge as marginais e tem a forma R_i M_ij C_j."""
    M = np.array([[0.2, 1.0, 0.5], [1.0, 0.3, 2.0]])
    marginals = MarginalSpec(np.array([0.45, 0.55]), np.array([0.2, 0.5, 0.3]))
    solution = maximize_entropy(M, marginals)

    np.testing.assert_allclose(solution.Z_star.sum(axis=1), marginals.row_marginals, rtol=1e-12)
    np.testing.assert_allclose(solution.Z_star.sum(axis=0), marginals.col_marginals, rtol=1e-12)
    np.testing.assert_allclose(
        solution.Z_star, solution.R[:, None] * M * solution.C[None, :], rtol=1e-12
    )
    assert solution.residual < 1e-12


def test_valor_otimo_igual_ao_objetivo():
    """Testa g* = g(Z*)."""
    M = np.array([[0.2, 1.0], [1.0, 0.7]])
    solution = maximize_entropy(M, MarginalSpec.binary(0.35, 0.6))

    assert solution.g_star == pytest.approx(entropy_objective(M, solution.Z_star), rel=1e-12)


def test_maximizador_supera_pontos_viaveis():
    """Testa que perturbações viáveis de Z* não aumentam g."""
    M = np.array([[0.2, 1.0], [1.0, 0.7]])
    solution = maximize_entropy(M, MarginalSpec.binary(0.35, 0.6))
    direction = np.array([[1.0, -1.0], [-1.0, 1.0]])

    for eps in (1e-3, -1e-3, 1e-2, -1e-2):
        assert entropy_objective(M, solution.Z_star + eps * direction) < solution.g_star


def test_objetivo_com_massa_fora_do_suporte():
    """Testa que g vale −inf quando Z tem massa onde M é zero."""
    Z = np.array([[0.1, 0.4], [0.4, 0.1]])

    assert entropy_objective(HARD_CORE_M, Z) == float("-inf")


def test_marginais_inviaveis_do_hard_core():
    """Testa α + β > 1 no hard-core como inviável."""
    with pytest.raises(InfeasibleMarginalsError):
        maximize_entropy(HARD_CORE_M, MarginalSpec.binary(0.7, 0.6))


def test_celulas_forcadas_a_zero():
    """Testa α + β = 1 no hard-core: a célula (+,+) fica forçada a zero."""
    marginals = MarginalSpec.binary(0.5, 0.5)
    support = effective_support(HARD_CORE_M, marginals)
    solution = maximize_entropy(HARD_CORE_M, marginals)

    assert not support[1, 1]
    np.testing.assert_allclose(solution.Z_star, [[0.0, 0.5], [0.5, 0.0]], atol=1e-12)


def test_marginal_nula():
    """Testa que linhas e colunas com marginal nula recebem escalador 0."""
    solution = maximize_entropy(np.ones((2, 2)), MarginalSpec.binary(0.0, 0.4))

    assert solution.R[0] == 0.0
    np.testing.assert_allclose(solution.Z_star[1], [0.4, 0.6])


def test_dimensoes_incompativeis():
    """Testa a validação das dimensões de M."""
    with pytest.raises(ValueError):
        maximize_entropy(np.ones((3, 2)), MarginalSpec.binary(0.5, 0.5))


def test_marginais_devem_somar_um():
    """Testa a validação de MarginalSpec."""
    with pytest.raises(ValueError):
        MarginalSpec(np.array([0.5, 0.6]), np.array([0.5, 0.5]))
    with pytest.raises(ValueError):
        MarginalSpec(np.array([1.2, -0.2]), np.array([0.5, 0.5]))


def test_limite_de_varreduras():
    """Testa ScalingConvergenceError quando as varreduras acabam longe da tolerância."""
    M = np.array([[1e-6, 1.0], [1.0, 1e-6]])
    with pytest.raises(ScalingConvergenceError):
        maximize_entropy(M, MarginalSpec.binary(0.3, 0.6), max_sweeps=1)


def test_gradiente_contra_diferencas_finitas():
    """Testa ∂g*/∂α pelas derivadas dos escaladores."""
    M = np.array([[0.2, 1.0], [1.0, 0.7]])
    alpha, beta, h = 0.35, 0.6, 1e-5
    marginals = MarginalSpec.binary(alpha, beta)
    (derivative,) = gstar_gradient(M, marginals, [(np.array([1.0, -1.0]), np.zeros(2))])

    upper = maximize_entropy(M, MarginalSpec.binary(alpha + h, beta)).g_star
    lower = maximize_entropy(M, MarginalSpec.binary(alpha - h, beta)).g_star
    assert derivative == pytest.approx((upper - lower) / (2 * h), rel=1e-6)


def test_decaimento_quadratico():
    """Testa que a Hessiana de g é negativa definida no maximizador."""
    M = np.kron(np.array([[0.2, 1.0], [1.0, 0.2]]), np.array([[0.2, 1.0], [1.0, 0.2]]))
    rows = np.array([0.1, 0.2, 0.2, 0.5])
    cols = np.array([0.15, 0.25, 0.25, 0.35])
    report = quadratic_decay_check(M, MarginalSpec(rows, cols))

    assert report["pass"]
    assert report["dimension"] == 9


def test_decaimento_com_celulas_nulas():
    """Testa a Hessiana restrita às direções viáveis quando M tem zeros."""
    M = np.array([[0.0, 1.0, 1.0], [1.0, 1.0, 1.0]])
    marginals = MarginalSpec(np.array([0.3, 0.7]), np.array([0.2, 0.3, 0.5]))
    report = quadratic_decay_check(M, marginals)

    assert report["pass"]
    assert report["dimension"] == 1
