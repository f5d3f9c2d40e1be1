"""
Testes para o pacote de análise de momentos.
"""

import math
import os
from dataclasses import replace

import numpy as np
import pytest

from phasecrit.models import SpinModel
from phasecrit.moment_analysis import (
    CriticalPointError,
    RegionError,
    RoundingError,
    asymptotic_prefactors,
    c_star,
    classify_phi1_critical_points,
    exact_first_moment,
    exact_gadget_first_moment,
    exact_second_moment_term,
    find_phi1_critical_points,
    gadget_first_moment_ratio,
    gadget_second_moment_ratio,
    gadget_x_star,
    gamma_range,
    gaussian_ratio_check,
    hypotheses,
    laplace_constant,
    lower_right_log_minors,
    moment_ratio_limit,
    multinomial_ratio_approx,
    overlap_marginals,
    phi1,
    phi1_gradient,
    phi1_hessian,
    phi2,
    phi2_gradient,
    round_fractions,
    second_moment_stationarity,
    verify_phi2_maximum,
)
from phasecrit.tree_criticality import InequalityViolation, solve_tree_fixed_points

SLOW = pytest.mark.skipif(
    not os.environ.get("PHASECRIT_SLOW_TESTS"),
    reason="Defina PHASECRIT_SLOW_TESTS para rodar n até 10⁴",
)


RATIO_ISING_02 = 2048 / (255 * math.sqrt(63))


@pytest.fixture
def ising02():
    return SpinModel.ising(0.2, 3)


@pytest.fixture
def trivial():
    return SpinModel(b1=1.0, b2=1.0, lam=1.0, delta=3)


def test_gradiente_nulo_nas_fases(ising02):
    """Testa ∇φ₁ = 0 em (p⁺, p⁻), (p⁻, p⁺) e (p*, p*)."""
    points = find_phi1_critical_points(ising02)

    assert len(points) == 3
    for alpha, beta in points:
        assert np.hypot(*phi1_gradient(ising02, alpha, beta)) < 1e-8


def test_gradiente_contra_diferencas_finitas(ising02):
    """Testa o gradiente analítico de φ₁ fora dos pontos críticos."""
    alpha, beta, h = 0.3, 0.45, 1e-5
    d_alpha, d_beta = phi1_gradient(ising02, alpha, beta)

    numeric_alpha = (phi1(ising02, alpha + h, beta).phi1 - phi1(ising02, alpha - h, beta).phi1) / (2 * h)
    numeric_beta = (phi1(ising02, alpha, beta + h).phi1 - phi1(ising02, alpha, beta - h).phi1) / (2 * h)
    assert d_alpha == pytest.approx(numeric_alpha, rel=1e-6)
    assert d_beta == pytest.approx(numeric_beta, rel=1e-6)


def test_phi1_inviavel_no_hard_core():
    """Testa φ₁ = −inf quando α + β > 1 no hard-core."""
    point = phi1(SpinModel.hard_core(2.0, 3), 0.7, 0.6)

    assert point.phi1 == float("-inf")
    assert point.X is None
    assert not point.feasible


def test_phi1_fora_da_regiao(ising02):
    """Testa RegionError para α fora de [0, 1]."""
    with pytest.raises(RegionError):
        phi1(ising02, 1.5, 0.5)
    with pytest.raises(RegionError):
        phi1_gradient(ising02, 0.0, 0.5)


def test_identidade_phi2_igual_a_2phi1(ising02):
    """Testa φ₂(α², β²) = 2φ₁(α, β)."""
    for alpha, beta in ((0.3, 0.6), (0.5, 0.5), (0.8, 0.1)):
        value = phi2(ising02, alpha, beta, alpha**2, beta**2).phi2
        assert value == pytest.approx(2 * phi1(ising02, alpha, beta).phi1, rel=1e-10)


def test_gradiente_phi2_nulo_no_produto(ising02):
    """Testa ∇φ₂ = 0 em (α², β²)."""
    gradient = phi2_gradient(ising02, 0.3, 0.6, 0.09, 0.36)

    assert max(abs(g) for g in gradient) < 1e-8


def test_regiao_de_overlap():
    """Testa o intervalo de γ e a validação das marginais do segundo momento."""
    assert gamma_range(0.7) == pytest.approx((0.4, 0.7))
    assert gamma_range(0.3) == (0.0, 0.3)

    marginals = overlap_marginals(0.3, 0.6, 0.1, 0.3)
    np.testing.assert_allclose(marginals.row_marginals, [0.1, 0.2, 0.2, 0.5])
    with pytest.raises(RegionError):
        overlap_marginals(0.3, 0.6, 0.4, 0.3)


def test_razao_limite_do_ising(ising02):
    """Testa (1−ω²)^{−(Δ−1)/2}(1−(Δ−1)²ω²)^{−1/2} com ω = 1/16."""
    assert moment_ratio_limit(ising02) == pytest.approx(RATIO_ISING_02, rel=1e-9)


def test_razao_limite_indefinida(ising02):
    """Testa a rejeição da razão limite quando (Δ−1)²ω ≥ 1."""
    data = replace(solve_tree_fixed_points(ising02), omega=0.3)
    with pytest.raises(InequalityViolation):
        moment_ratio_limit(ising02, data)


def test_prefatores_assintoticos(ising02):
    """Testa E₁E₂E₃ = P²(1−ω²) e a razão entre os prefatores."""
    constants = asymptotic_prefactors(ising02)

    assert constants.identity_residual < 1e-10
    assert constants.ratio_limit == pytest.approx(RATIO_ISING_02, rel=1e-9)
    assert constants.second_prefactor / constants.first_prefactor**2 == pytest.approx(
        constants.ratio_limit, rel=1e-8
    )
    assert constants.quadratic_form_det > 0
    assert constants.E1 == pytest.approx(14.4, rel=1e-9)


def test_verificacao_gaussiana(ising02):
    """Testa 4DF − E² pela Hessiana numérica e pela integral gaussiana."""
    report = gaussian_ratio_check(ising02)

    assert report["relative_error"] < 1e-6
    assert report["integral_relative_error"] < 1e-6


def test_aproximacao_de_multinomiais():
    """Testa a razão de multinomiais contra a cota Σyᵢ²/bᵢ."""
    report = multinomial_ratio_approx([100, 100], [3, 4])

    assert report["approx"] == pytest.approx(128.0)
    assert report["bound"] == pytest.approx(0.25)
    assert report["relative_error"] < report["bound"]
    with pytest.raises(ValueError):
        multinomial_ratio_approx([4], [3])


def test_primeiro_momento_exato_do_modelo_trivial(trivial):
    """Testa E[Z^{α,β}] = C(n, αn)C(n, βn) com todos os pesos iguais a 1."""
    value = exact_first_moment(trivial, 10, 0.3, 0.5)

    assert value == pytest.approx(math.log(math.comb(10, 3) * math.comb(10, 5)))


def test_segundo_momento_exato_do_modelo_trivial(trivial):
    """Testa que a enumeração das tabelas 4×4 soma um por emparelhamento."""
    value = exact_second_moment_term(trivial, 6, 1 / 2, 1 / 3, 1 / 6, 0.0)
    expected = 20 * 3 * 3 * 15 * 1 * 6

    assert value == pytest.approx(math.log(expected), rel=1e-12)


def test_segundo_momento_exato_limite_de_n(ising02):
    """Testa o limite de n da enumeração exata."""
    with pytest.raises(ValueError):
        exact_second_moment_term(ising02, 41, 0.5, 0.5, 0.25, 0.25)


def test_arredondamento_de_fracoes(ising02):
    """Testa RoundingError e o arredondamento explícito."""
    with pytest.raises(RoundingError):
        exact_first_moment(ising02, 10, 0.33, 0.5)
    assert round_fractions(10, 0.33, 0.5) == (0.3, 0.5)


def test_primeiro_momento_converge_para_phi1(ising02):
    """Testa ln E[Z^{α,β}]/n → φ₁ e a constante de Laplace."""
    alpha, beta = 0.5, 0.25
    value = phi1(ising02, alpha, beta).phi1
    n = 4000
    log_moment = exact_first_moment(ising02, n, alpha, beta)

    assert log_moment / n == pytest.approx(value, abs=5e-3)
    constant = math.exp(log_moment - n * value + math.log(n))
    assert constant == pytest.approx(laplace_constant(ising02, alpha, beta), rel=1e-2)


@SLOW
def test_constante_de_laplace_com_n_grande(ising02):
    """Testa a tendência monótona de E[Z^{α,β}]·n·e^{−nΦ₁} até 1% da constante em n = 10⁴."""
    alpha, beta = 0.5, 0.25
    value = phi1(ising02, alpha, beta).phi1
    target = laplace_constant(ising02, alpha, beta)
    gaps = [
        abs(math.exp(exact_first_moment(ising02, n, alpha, beta) - n * value) * n / target - 1)
        for n in (100, 1000, 10000)
    ]

    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-2


def test_primeiro_momento_hard_core_inviavel():
    """Testa ln E = −inf quando αn + βn > n no hard-core."""
    model = SpinModel.hard_core(1.0, 3)

    assert exact_first_moment(model, 10, 0.7, 0.6) == float("-inf")


def test_classificacao_dos_pontos_criticos(ising02):
    """Testa máximo local em (p⁺, p⁻) e sela em (p*, p*)."""
    report = classify_phi1_critical_points(ising02)
    kinds = [point["kind"] for point in report["points"]]

    assert kinds == ["local_max", "local_max", "saddle"]
    assert "closed_forms" in report["points"][0]
    assert "closed_forms" not in report["points"][1]


def test_classificacao_do_hard_core():
    """Testa a classificação 2×2 do hard-core sem formas fechadas."""
    report = classify_phi1_critical_points(SpinModel.hard_core(6.0, 3))

    assert [point["kind"] for point in report["points"]] == ["local_max", "local_max", "saddle"]
    assert all("closed_forms" not in point for point in report["points"])


def test_menores_do_hessiano(ising02):
    """Testa os menores de −H de Φ₁ em (p⁺, p⁻): todos positivos."""
    data = solve_tree_fixed_points(ising02)
    point = phi1(ising02, data.p_plus, data.p_minus)
    minors = lower_right_log_minors(phi1_hessian(ising02, data.p_plus, data.p_minus, point.X))

    assert [sign for sign, _ in minors] == [1.0, 1.0, 1.0]


def test_hipoteses(ising02):
    """Testa as hipóteses conhecidas para o máximo de φ₂."""
    held = hypotheses(ising02)

    assert held["ising_delta3"]
    assert not held["hard_core_small_delta"]
    assert hypotheses(SpinModel.hard_core(6.0, 3))["hard_core_small_delta"]


def test_maximo_de_phi2(ising02):
    """Testa que o máximo global de φ₂ em (p⁺, p⁻) está em (α², β²)."""
    report = verify_phi2_maximum(ising02, grid=21, starts=3)

    assert report["position_pass"]
    assert report["value_identity_error"] < 1e-9
    assert report["minors_match"]
    assert report["minors_positive"]


def test_maximo_de_phi2_com_menores_divergentes(ising02, monkeypatch):
    """Testa CriticalPointError quando os menores de −H não batem com as formas fechadas."""
    monkeypatch.setattr(
        "phasecrit.moment_analysis.critical.phi2_minor_closed_forms",
        lambda model, data: [1.0, 1.0, 1.0],
    )
    with pytest.raises(CriticalPointError) as exc_info:
        verify_phi2_maximum(ising02, grid=21, starts=3)
    assert exc_info.value.details["minors_match"] is False


def test_estacionariedade_no_produto(ising02):
    """Testa o caso I do sistema reduzido em (α², β²)."""
    data = solve_tree_fixed_points(ising02)
    alpha, beta = data.p_plus, data.p_minus
    report = second_moment_stationarity(ising02, alpha, beta, alpha**2, beta**2)

    assert report["case"] == "I"
    assert report["symmetric_scalers"]
    assert max(abs(r) for r in report["residuals"]) < 1e-9


def test_raiz_do_gadget():
    """Testa x* nos casos B₁B₂ = 1 e hard-core."""
    assert gadget_x_star(SpinModel(1.0, 1.0, 1.0, 3), 0.3, 0.6) == pytest.approx(0.18)
    assert gadget_x_star(SpinModel.hard_core(2.0, 3), 0.3, 0.4) == 0.0
    with pytest.raises(ValueError):
        gadget_x_star(SpinModel.hard_core(2.0, 3), 1.2, 0.4)


def test_formas_da_razao_do_gadget(ising02):
    """Testa que as três formas da razão do primeiro momento coincidem em (p⁺, p⁻)."""
    data = solve_tree_fixed_points(ising02)
    report = gadget_first_moment_ratio(ising02, data.p_plus, data.p_minus, (2, 1, 1, 2), data)

    assert report["forms_agree"]
    assert report["m_prime"] == 3
    assert report["log_c_star"] == pytest.approx(math.log(c_star(ising02, data, 3)))


def test_razao_do_gadget_fora_das_fases(ising02):
    """Testa que fora de (p⁺, p⁻) só a forma em x* é devolvida."""
    report = gadget_first_moment_ratio(ising02, 0.4, 0.5, (1, 0, 0, 1))

    assert "forms_agree" not in report
    assert report["ratio"] > 0


def test_razao_do_segundo_momento_do_gadget(ising02):
    """Testa que a razão do segundo momento é o quadrado da do primeiro."""
    report = gadget_second_moment_ratio(ising02, (1, 1, 0, 2))

    assert report["log_ratio_to_first_squared"] == pytest.approx(0.0, abs=1e-9)
    assert max(report["fixed_point_residuals"].values()) < 1e-9


def test_eta_invalido(ising02):
    """Testa a validação das contagens η."""
    with pytest.raises(ValueError):
        gadget_second_moment_ratio(ising02, (1, 1, 0, 1))
    with pytest.raises(ValueError):
        gadget_first_moment_ratio(ising02, 0.4, 0.5, (1, -1, 0, 0))
    assert c_star(ising02, solve_tree_fixed_points(ising02), 0) == 1.0


def test_primeiro_momento_exato_do_gadget(trivial):
    """Testa o primeiro momento do gadget com pesos unitários e o fator λ dos spins de U."""
    value = exact_gadget_first_moment(trivial, 8, 2, 3, 4, (1, 1, 2, 0))
    weighted = exact_gadget_first_moment(SpinModel(1.0, 1.0, 2.0, 3), 8, 2, 3, 4, (1, 1, 2, 0))

    assert value == pytest.approx(math.log(math.comb(8, 3) * math.comb(8, 4)))
    assert weighted - value == pytest.approx(10 * math.log(2.0))
    with pytest.raises(ValueError):
        exact_gadget_first_moment(trivial, 8, 3, 3, 4, (1, 1, 2, 0))
