"""
Testes para o módulo de condicionamento em subgrafos pequenos.
"""

import math
import os
from dataclasses import replace

import numpy as np
import pytest

from phasecrit.exact_oracle import GuardExceededError
from phasecrit.models import SpinModel
from phasecrit.moment_analysis import moment_ratio_limit
from phasecrit.smallgraph_conditioning import (
    ConditioningError,
    conditioned_cycle_moment_mc,
    conditioning_data,
    cycle_excess,
    falling_factorial_moment,
)
from phasecrit.tree_criticality import solve_tree_fixed_points

SLOW = pytest.mark.skipif(
    not os.environ.get("PHASECRIT_SLOW_TESTS"),
    reason="Defina PHASECRIT_SLOW_TESTS para rodar o Monte Carlo com 10⁴ grafos",
)


@pytest.fixture
def ising02():
    return SpinModel.ising(0.2, 3)


def test_forma_fechada_igual_a_razao_limite(ising02):
    """Testa exp(Σ λᵢδᵢ²) = lim E[Z²]/E[Z]²."""
    data = conditioning_data(ising02)

    assert data.sum_closed_form == pytest.approx(moment_ratio_limit(ising02), rel=1e-12)
    assert data.sum_closed_form == pytest.approx(2048 / (255 * math.sqrt(63)), rel=1e-9)


def test_taxas_e_excessos(ising02):
    """Testa λ₄ = 4,5 e δᵢ = ω^{i/2} com ω = 1/16."""
    data = conditioning_data(ising02, max_len=8)

    assert sorted(data.lambdas) == [2, 4, 6, 8]
    assert data.lambdas[4] == pytest.approx(4.5)
    assert data.deltas[4] == pytest.approx(1 / 256)
    assert data.deltas[2] == pytest.approx(1 / 16)


def test_somas_parciais_convergem(ising02):
    """Testa que as somas parciais não decrescem e alcançam a forma fechada dentro da cota de cauda."""
    data = conditioning_data(ising02, max_len=20)
    partial = np.array(data.partial_sums)

    assert np.all(np.diff(partial) >= 0)
    gap = math.log(data.sum_closed_form) - math.log(partial[-1])
    assert abs(gap) <= data.tail_bound + 1e-12


def test_excesso_pelo_produto_de_autovalores():
    """Testa δᵢ pela forma do produto no hard-core."""
    model = SpinModel.hard_core(6.0, 3)
    data = solve_tree_fixed_points(model)

    for i in (2, 4, 6):
        assert cycle_excess(model, data, i) == pytest.approx(data.omega ** (i / 2), rel=1e-12)


def test_serie_divergente(ising02):
    """Testa ConditioningError quando (Δ−1)ω ≥ 1."""
    data = replace(solve_tree_fixed_points(ising02), omega=0.6)
    with pytest.raises(ConditioningError):
        conditioning_data(ising02, data=data)
    with pytest.raises(ValueError):
        conditioning_data(ising02, max_len=1)


def test_momento_fatorial_decrescente():
    """Testa a média empírica de [X]_m."""
    assert falling_factorial_moment([3, 4], 2) == pytest.approx(9.0)
    assert falling_factorial_moment([3, 4], 0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        falling_factorial_moment([1], -1)


def test_monte_carlo_reprodutivel(ising02):
    """Testa que o Monte Carlo é reprodutível e independe do número de workers."""
    serial = conditioned_cycle_moment_mc(ising02, n=6, i=4, trials=40, seed=21)
    parallel = conditioned_cycle_moment_mc(ising02, n=6, i=4, trials=40, seed=21, workers=2)

    assert serial["estimate"] == pytest.approx(parallel["estimate"], rel=1e-12)
    assert serial["estimate"] >= 0
    assert serial["limit"] == pytest.approx(4.5 * (1 + 1 / 256))
    assert serial["alpha"] * 6 == round(serial["alpha"] * 6)


def test_monte_carlo_modelo_uniforme():
    """Testa B₁B₂ = 1, onde o condicionamento não altera os ciclos."""
    model = SpinModel(b1=1.0, b2=1.0, lam=1.0, delta=3)
    report = conditioned_cycle_moment_mc(model, n=6, i=4, trials=20, seed=1)

    assert report["alpha"] == report["beta"] == 0.5
    assert report["estimate"] == pytest.approx(report["mean_cycles"])
    assert report["log_mean_z"] == pytest.approx(report["log_first_moment"], rel=1e-12)


def test_monte_carlo_limites(ising02):
    """Testa os limites e o caso de ciclo ímpar."""
    with pytest.raises(GuardExceededError):
        conditioned_cycle_moment_mc(ising02, n=13, i=4, trials=10)
    with pytest.raises(ValueError):
        conditioned_cycle_moment_mc(ising02, n=6, i=4, trials=0)
    assert conditioned_cycle_moment_mc(ising02, n=6, i=5, trials=10)["skipped"]


@SLOW
@pytest.mark.parametrize("n", [6, 8, 10])
def test_monte_carlo_contra_primeiro_momento_exato(n):
    """Testa a média amostral de Z^{α,β} contra o primeiro momento exato e o limite dos ciclos."""
    model = SpinModel.ising(0.5, 3)
    report = conditioned_cycle_moment_mc(model, n=n, i=4, trials=10000, seed=n, alpha=0.5, beta=0.5, workers=4)

    assert abs(report["log_mean_z"] - report["log_first_moment"]) <= 4 * report["log_mean_z_stderr"]
    assert report["estimate"] == pytest.approx(report["limit"], rel=0.5)
