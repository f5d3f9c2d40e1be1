"""
Testes para o pacote de grafos aleatórios.
"""

import numpy as np
import pytest

from phasecrit.models import BipartiteMultigraph, SpinModel
from phasecrit.random_graphs import (
    RNG_NAME,
    CycleGuardError,
    count_cycles,
    expected_cycle_rate,
    gadget_parameters,
    phase,
    proper_edge_colorings,
    read_graph,
    sample_bipartite_regular,
    sample_gadget,
    split_seeds,
    transition_matrix_spectrum,
    write_graph,
)


def _complete_33() -> BipartiteMultigraph:
    return BipartiteMultigraph(n=3, delta=3, matchings=[[0, 1, 2], [1, 2, 0], [2, 0, 1]])


def test_amostra_regular_e_reprodutivel():
    """Testa graus Δ e reprodutibilidade pela semente."""
    graph = sample_bipartite_regular(50, 3, seed=7)
    left, right = graph.degrees()

    assert np.all(left == 3) and np.all(right == 3)
    assert graph.rng == RNG_NAME
    assert graph.seed == 7
    again = sample_bipartite_regular(50, 3, seed=7)
    for a, b in zip(graph.matchings, again.matchings):
        np.testing.assert_array_equal(a, b)


def test_amostra_parametros_invalidos():
    """Testa a rejeição de n ou Δ não positivos."""
    with pytest.raises(ValueError):
        sample_bipartite_regular(0, 3)


def test_emparelhamento_invalido():
    """Testa que cada emparelhamento deve ser uma permutação."""
    with pytest.raises(ValueError):
        BipartiteMultigraph(n=3, delta=1, matchings=[[0, 0, 1]])
    with pytest.raises(ValueError):
        BipartiteMultigraph(n=3, delta=2, matchings=[[0, 1, 2]])


def test_sementes_derivadas():
    """Testa que split_seeds é determinístico e gera sementes distintas."""
    seeds = split_seeds(11, 5)

    assert seeds == split_seeds(11, 5)
    assert len(set(seeds)) == 5
    assert split_seeds(11, 0) == []


def test_ciclos_do_k33():
    """Testa 9 ciclos de comprimento 4 e 6 hamiltonianos em K₃,₃."""
    counts = count_cycles(_complete_33(), 6)

    assert counts[2] == 0
    assert counts[3] == 0
    assert counts[4] == 9
    assert counts[6] == 6


def test_ciclos_com_arestas_paralelas():
    """Testa 2-ciclos e o peso das multiplicidades."""
    doubled = BipartiteMultigraph(n=2, delta=2, matchings=[[0, 1], [0, 1]])
    square = BipartiteMultigraph(n=2, delta=2, matchings=[[0, 1], [1, 0]])
    tripled = BipartiteMultigraph(n=2, delta=3, matchings=[[0, 1], [0, 1], [1, 0]])

    assert count_cycles(doubled, 4) == {2: 2, 3: 0, 4: 0}
    assert count_cycles(square, 4) == {2: 0, 3: 0, 4: 1}
    assert count_cycles(tripled, 4) == {2: 2, 3: 0, 4: 4}


def test_limite_de_comprimento():
    """Testa CycleGuardError acima de 12."""
    with pytest.raises(CycleGuardError):
        count_cycles(_complete_33(), 13)


def test_taxas_de_ciclos():
    """Testa r(Δ, i) e λᵢ = r(Δ, i)/i."""
    assert proper_edge_colorings(3, 4) == 18
    assert proper_edge_colorings(3, 3) == 6
    assert expected_cycle_rate(3, 4) == pytest.approx(4.5)
    assert expected_cycle_rate(4, 2) == pytest.approx(6.0)
    with pytest.raises(ValueError):
        expected_cycle_rate(3, 1)


def test_media_de_ciclos_curtos():
    """Testa a média de X₄ em G(n, 3) contra λ₄ = 4,5."""
    counts = [count_cycles(sample_bipartite_regular(60, 3, seed=s), 4)[4] for s in split_seeds(3, 300)]

    assert np.mean(counts) == pytest.approx(4.5, abs=0.6)


def test_parametros_do_gadget():
    """Testa k, ℓ e m′ do gadget."""
    assert gadget_parameters(4096, 3, 0.25, 0.25) == (8, 2, 32)
    with pytest.raises(ValueError):
        gadget_parameters(4096, 2, 0.25, 0.25)
    with pytest.raises(ValueError):
        gadget_parameters(4096, 3, 0.0, 0.25)


def test_estrutura_do_gadget():
    """Testa graus, rótulos e árvores do gadget amostrado."""
    gadget = sample_gadget(64, 3, 0.2, 0.7, seed=5)
    labels = gadget.labels
    deg = gadget.degrees()

    assert (gadget.k, gadget.ell, gadget.m_prime) == (2, 4, 32)
    assert gadget.asymptotic_warning
    assert len(gadget.trees) == 2 * gadget.k
    assert len(labels["U+"]) == len(labels["U-"]) == gadget.m_prime
    for name in ("W+", "W-", "U+", "U-"):
        assert np.all(deg[labels[name]] == 3)
    for name in ("R+", "R-"):
        assert np.all(deg[labels[name]] == 2)
    assert deg.size == gadget.num_vertices


def test_fase_de_configuracao():
    """Testa a fase pela contagem de spins −1 em W₊ e W₋."""
    gadget = sample_gadget(64, 3, 0.2, 0.7, seed=5)
    sigma = np.ones(gadget.num_vertices, dtype=int)
    sigma[: gadget.n // 2] = -1

    assert phase(sigma, gadget) == "+"
    assert phase(np.ones(gadget.num_vertices, dtype=int), gadget) == "-"
    with pytest.raises(ValueError):
        phase(sigma[:-1], gadget)


def test_gravacao_e_leitura(tmp_path):
    """Testa a persistência de grafos e gadgets em JSON."""
    graph = sample_bipartite_regular(8, 3, seed=2)
    gadget = sample_gadget(64, 3, 0.2, 0.7, seed=5)

    loaded = read_graph(write_graph(graph, tmp_path / "g.json"))
    np.testing.assert_array_equal(loaded.adjacency(), graph.adjacency())
    loaded_gadget = read_graph(write_graph(gadget, tmp_path / "h.json"))
    np.testing.assert_array_equal(loaded_gadget.gbar_adjacency(), gadget.gbar_adjacency())
    assert loaded_gadget.labels == gadget.labels

    with pytest.raises(FileNotFoundError):
        read_graph(tmp_path / "ausente.json")
    (tmp_path / "ruim.json").write_text("{", encoding="utf-8")
    with pytest.raises(ValueError):
        read_graph(tmp_path / "ruim.json")


def test_espectro_da_matriz_de_transicao():
    """Testa os autovalores ±e₁, ±e₃ e Σ(x·eⱼ)^i = 2(1 + ω^{i/2})."""
    report = transition_matrix_spectrum(SpinModel.ising(0.2, 3))

    assert report["max_error"] < 1e-9
    for weights in report["cycle_weights"].values():
        assert weights["error"] < 1e-8


def test_espectro_exige_b1_positivo():
    """Testa a rejeição do hard-core na matriz de transição."""
    with pytest.raises(ValueError):
        transition_matrix_spectrum(SpinModel.hard_core(6.0, 3))
