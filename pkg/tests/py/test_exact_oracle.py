"""
Testes para o pacote do oráculo exato.
"""

import itertools
import os

import numpy as np
import pytest
from scipy.special import logsumexp

from phasecrit.exact_oracle import (
    GuardExceededError,
    bimodality_report,
    gadget_conditional_Z,
    glauber_run,
    pair_overlap_statistics,
    partition_function,
    vertex_marginals,
    z_alpha_beta_table,
)
from phasecrit.models import BipartiteMultigraph, SpinModel
from phasecrit.moment_analysis import exact_first_moment
from phasecrit.random_graphs import sample_bipartite_regular, sample_gadget

SLOW = pytest.mark.skipif(
    not os.environ.get("PHASECRIT_SLOW_TESTS"),
    reason="Defina PHASECRIT_SLOW_TESTS para rodar as tendências em n",
)


@pytest.fixture
def ising02():
    return SpinModel.ising(0.2, 3)


@pytest.fixture
def small_graph():
    return sample_bipartite_regular(4, 3, seed=13)


def _brute_force_log_z(A: np.ndarray, model: SpinModel) -> float:
    n1, n2 = A.shape
    logs = []
    for spins in itertools.product((-1, 1), repeat=n1 + n2):
        left, right = np.array(spins[:n1]), np.array(spins[n1:])
        minus_edges = int(np.sum(A * np.outer(left == -1, right == -1)))
        plus_edges = int(np.sum(A * np.outer(left == 1, right == 1)))
        minus_count = int(np.sum(left == -1) + np.sum(right == -1))
        if model.b1 == 0 and minus_edges:
            continue
        log_w = minus_count * np.log(model.lam) + plus_edges * np.log(model.b2)
        if minus_edges:
            log_w += minus_edges * np.log(model.b1)
        logs.append(log_w)
    return float(logsumexp(logs))


def test_funcao_de_particao_de_uma_aresta():
    """Testa Z = λ²B₁ + 2λ + B₂ para uma única aresta."""
    model = SpinModel(b1=0.3, b2=0.5, lam=1.5, delta=1)
    expected = 1.5**2 * 0.3 + 2 * 1.5 + 0.5

    assert partition_function(np.array([[1]]), model) == pytest.approx(np.log(expected))


def test_funcao_de_particao_contra_forca_bruta(small_graph, ising02):
    """Testa a enumeração vetorizada contra a soma ingênua."""
    A = small_graph.adjacency()
    for model in (ising02, SpinModel.hard_core(1.7, 3), SpinModel(0.4, 0.9, 0.8, 3)):
        assert partition_function(small_graph, model) == pytest.approx(
            _brute_force_log_z(A, model), rel=1e-12
        )


def test_tabela_soma_a_particao(small_graph, ising02):
    """Testa logsumexp da tabela Z^{α,β} = log Z."""
    summary = z_alpha_beta_table(small_graph, ising02)

    assert summary.log_z_table.shape == (5, 5)
    assert summary.logZ == pytest.approx(partition_function(small_graph, ising02), rel=1e-12)
    assert summary.z_table.sum() == pytest.approx(1.0)


def test_tabela_simetrica_no_ising(small_graph, ising02):
    """Testa Z^{α,β} = Z^{1−α,1−β} no Ising sem campo."""
    table = z_alpha_beta_table(small_graph, ising02).log_z_table

    np.testing.assert_allclose(table, table[::-1, ::-1], rtol=1e-12)


def test_hard_core_sem_arestas_ocupadas(small_graph):
    """Testa que o hard-core não admite αn₁ = βn₂ = n."""
    table = z_alpha_beta_table(small_graph, SpinModel.hard_core(1.0, 3)).log_z_table

    assert table[4, 4] == float("-inf")
    assert table[0, 0] == pytest.approx(0.0)


def test_marginais_dos_vertices(small_graph, ising02):
    """Testa μ(σ_v = −1) = 1/2 no Ising sem campo."""
    left, right = vertex_marginals(small_graph, ising02)

    np.testing.assert_allclose(left, 0.5, rtol=1e-12)
    np.testing.assert_allclose(right, 0.5, rtol=1e-12)


def test_marginais_contra_forca_bruta(small_graph):
    """Testa as marginais de vértice derivando log Z em relação a λ."""
    model = SpinModel.hard_core(1.3, 3)
    left, right = vertex_marginals(small_graph, model)
    h = 1e-6
    upper = partition_function(small_graph, SpinModel.hard_core(1.3 * np.exp(h), 3))
    lower = partition_function(small_graph, SpinModel.hard_core(1.3 * np.exp(-h), 3))

    assert left.sum() + right.sum() == pytest.approx((upper - lower) / (2 * h), rel=1e-6)


def test_limites_de_tamanho(ising02):
    """Testa os limites das enumerações exatas."""
    with pytest.raises(GuardExceededError):
        partition_function(np.ones((25, 2), dtype=int), ising02)
    with pytest.raises(GuardExceededError):
        z_alpha_beta_table(np.ones((21, 2), dtype=int), ising02)
    with pytest.raises(GuardExceededError):
        pair_overlap_statistics(np.ones((11, 2), dtype=int), ising02, 0.0, 0.5)


def test_matriz_invalida(ising02):
    """Testa a rejeição de matrizes não inteiras ou negativas."""
    with pytest.raises(ValueError):
        partition_function(np.array([[0.5]]), ising02)
    with pytest.raises(ValueError):
        partition_function(np.array([[-1]]), ising02)


def test_bimodalidade(small_graph, ising02):
    """Testa o relatório de bimodalidade com ρ explícito."""
    report = bimodality_report(small_graph, ising02, rho=0.5)

    assert 0 < report["mu_bal"] < 1
    assert 0 < report["mu_rho"] < 1
    assert report["ratio"] == pytest.approx(report["mu_bal"] / report["mu_rho"])
    with pytest.raises(ValueError):
        bimodality_report(small_graph, ising02, rho=1.5)


def test_estatisticas_de_pares(small_graph, ising02):
    """Testa que a soma sobre (γn, δn) é o quadrado de Z^{α,β}."""
    table = z_alpha_beta_table(small_graph, ising02).log_z_table
    stats = pair_overlap_statistics(small_graph, ising02, 0.5, 0.25)

    assert stats["a"] == 2 and stats["b"] == 1
    assert stats["log_table"].shape == (3, 2)
    assert stats["log_total"] == pytest.approx(2 * table[2, 1], rel=1e-12)


def test_gadget_condicionado(ising02):
    """Testa a tabela condicionada do gadget e a validação de η."""
    gadget = sample_gadget(12, 3, 0.2, 0.6, seed=4)
    summary = gadget_conditional_Z(gadget, ising02, (2, 2, 1, 3))

    assert gadget.m_prime == 4
    assert summary.log_z_table.shape == (13, 13)
    assert np.isfinite(summary.logZ)
    with pytest.raises(ValueError):
        gadget_conditional_Z(gadget, ising02, (1, 1, 1, 1))


def test_gadget_condicionado_por_forca_bruta(ising02):
    """Testa a fixação de U contra a enumeração com spins de U livres."""
    gadget = sample_gadget(12, 3, 0.2, 0.6, seed=4)
    A = gadget.gbar_adjacency()
    all_free = z_alpha_beta_table(A, ising02).logZ
    conditioned = [
        gadget_conditional_Z(gadget, ising02, (e1, 4 - e1, e2, 4 - e2)).logZ
        for e1 in range(5)
        for e2 in range(5)
    ]

    assert logsumexp(conditioned) <= all_free + 1e-9


def test_glauber_reprodutivel(small_graph, ising02):
    """Testa a reprodutibilidade e as grandezas da dinâmica de Glauber."""
    first = glauber_run(small_graph, ising02, steps=5000, seed=3)
    second = glauber_run(small_graph, ising02, steps=5000, seed=3)

    np.testing.assert_array_equal(first["signs"], second["signs"])
    assert 0 <= first["balance_fraction"] <= 1
    assert first["minus_frequency"].shape == (8,)
    assert np.all((first["minus_frequency"] >= 0) & (first["minus_frequency"] <= 1))
    assert set(np.unique(first["final"])) <= {-1, 1}


def test_glauber_configuracao_inicial(small_graph, ising02):
    """Testa a validação da configuração inicial e do número de passos."""
    with pytest.raises(ValueError):
        glauber_run(small_graph, ising02, steps=10, initial=[1, 1])
    with pytest.raises(ValueError):
        glauber_run(small_graph, ising02, steps=0)
    report = glauber_run(small_graph, ising02, steps=10, initial=[-1] * 8)
    assert report["steps"] == 10


def test_glauber_grafo_trivial():
    """Testa a frequência de −1 contra λ/(1+λ) sem arestas."""
    graph = BipartiteMultigraph(n=1, delta=0, matchings=[])
    model = SpinModel(b1=0.5, b2=0.5, lam=3.0, delta=1)
    report = glauber_run(graph, model, steps=40000, seed=9)

    np.testing.assert_allclose(report["minus_frequency"], 0.75, atol=0.03)


def test_glauber_com_pesos_extremos():
    """Testa o passo heat-bath quando λB₁^{k₋} e B₂^{k₊} saem do alcance de float."""
    graph = BipartiteMultigraph(n=2, delta=4, matchings=[[0, 1], [0, 1], [1, 0], [1, 0]])
    model = SpinModel.ising(1e-200, 4)
    three_minus = 0
    for seed in range(400):
        report = glauber_run(graph, model, steps=1, seed=seed, initial=[1, -1, 1, -1])
        assert np.all(np.isfinite(report["minus_frequency"]))
        three_minus += int(np.sum(report["final"] == -1) == 3)

    # Todo vértice vê dois vizinhos −1 e dois +1, então P(σ_v = −1) = 1/2
    assert 0.15 < three_minus / 400 < 0.35


@SLOW
def test_razao_de_bimodalidade_decresce_com_n():
    """Testa que μ(Σ^Bal)/μ(Σ^ρ) cai com n no regime de não unicidade."""
    model = SpinModel.ising(0.2, 3)
    sizes = [8, 10, 12, 14]
    log_ratios = [
        np.median([bimodality_report(sample_bipartite_regular(n, 3, seed=s), model)["log_ratio"] for s in range(5)])
        for n in sizes
    ]

    assert log_ratios[-1] < log_ratios[0]
    assert np.polyfit(sizes, log_ratios, 1)[0] < 0


@SLOW
def test_espera_de_glauber_cresce_com_n():
    """Testa que a espera mediana entre trocas de fase cresce com n."""
    model = SpinModel.ising(0.3, 3)
    waits = [
        np.median(
            [
                glauber_run(sample_bipartite_regular(n, 3, seed=s), model, steps=200000, seed=s)["median_wait"]
                for s in range(3)
            ]
        )
        for n in (4, 12)
    ]

    assert np.isfinite(waits[0])
    assert waits[1] > waits[0]


@SLOW
@pytest.mark.parametrize("n", [6, 8, 10])
def test_media_amostral_contra_primeiro_momento_com_delta2(n):
    """Testa a média de Z^{α,β} em 10⁴ grafos com Δ = 2 contra o primeiro momento exato."""
    model = SpinModel.ising(0.5, 2)
    half = n // 2
    log_z = np.array(
        [z_alpha_beta_table(sample_bipartite_regular(n, 2, seed=s), model).log_z_table[half, half] for s in range(10000)]
    )
    z = np.exp(log_z - log_z.max())
    log_mean = logsumexp(log_z) - np.log(log_z.size)
    stderr = z.std(ddof=1) / (z.mean() * np.sqrt(z.size))

    assert abs(log_mean - exact_first_moment(model, n, 0.5, 0.5)) <= 4 * stderr
