"""
Testes para a verificação polinomial exata e as cotas do Ising com Δ = 3.
"""

import os

import pytest

from phasecrit.poly_verify import (
    BIAS_LIMIT,
    COEFFICIENT_NAMES,
    InexactDivisionError,
    PipelineStageError,
    divides,
    exact_divide,
    extract_c_coefficients,
    ising_bias_checks,
    numeric_cross_check,
    parity_pattern,
    poly_hash,
    reduce_radicals,
    strip_factor,
    verify_hardcore_case,
)
from phasecrit.poly_verify.kernel import QA, QB, X, Y

SLOW = pytest.mark.skipif(
    not os.environ.get("PHASECRIT_SLOW_TESTS"),
    reason="Defina PHASECRIT_SLOW_TESTS para rodar d = 3 e d = 4",
)


@pytest.fixture(scope="module")
def case_d2():
    return verify_hardcore_case(2)


def test_divisao_exata():
    """Testa (y²−1)/(y−1) = y+1 e a falha com resto."""
    assert exact_divide(Y**2 - 1, Y - 1) == Y + 1
    assert divides(Y - 1, Y**3 - 1)
    with pytest.raises(InexactDivisionError) as exc_info:
        exact_divide(Y**2 + 1, Y - 1)
    assert exc_info.value.remainder
    with pytest.raises(ZeroDivisionError):
        exact_divide(Y, Y - Y)


def test_remocao_de_fator():
    """Testa a remoção da maior potência de um fator."""
    count, cofactor = strip_factor((Y - 1) ** 3 * (X + 2), Y - 1)

    assert count == 3
    assert cofactor == X + 2


def test_reducao_dos_radicais():
    """Testa qa² → (y−1)(x^d−1) e qb³ → (x−1)(y^d−1)·qb."""
    reduced = reduce_radicals(QA**2 + QB**3, 2)

    assert reduced == (Y - 1) * (X**2 - 1) + (X - 1) * (Y**2 - 1) * QB
    assert reduced.degree(QA) <= 1


def test_extracao_dos_coeficientes():
    """Testa a separação de H em c₀₀, c₀₁, c₁₀, c₁₁."""
    c00, c01, c10, c11 = extract_c_coefficients(1 + 2 * QB + 3 * X * QA + QA * QB)

    assert c00 == 1 and c01 == 2 and c11 == 1
    assert c10 == 3 * X
    with pytest.raises(PipelineStageError) as exc_info:
        extract_c_coefficients(QA**2)
    assert exc_info.value.stage == "extract"


def test_hash_estavel():
    """Testa que o hash depende só do polinômio."""
    assert poly_hash((X + Y) ** 2) == poly_hash(X**2 + 2 * X * Y + Y**2)
    assert poly_hash(X + Y) != poly_hash(X - Y)


def test_certificado_d2(case_d2):
    """Testa as fatorações dos quatro coeficientes para Δ = 3."""
    coefficients = case_d2["certificate"].coefficients

    assert case_d2["passed"]
    assert case_d2["clearing_powers"] == {"a": 3, "b": 3}
    assert [coefficients[n].y_minus_one_power for n in COEFFICIENT_NAMES] == [6, 5, 5, 4]
    assert [coefficients[n].one_plus_t_power for n in COEFFICIENT_NAMES] == [9, 8, 7, 6]
    assert [coefficients[n].shifted_sum_power for n in COEFFICIENT_NAMES] == [1, 1, 1, 0]
    assert all(coefficients[n].y_power == 2 for n in COEFFICIENT_NAMES)
    assert coefficients["c00"].leading_t_coefficients == [4, 28, 84]
    assert coefficients["c01"].leading_t_coefficients == [4, 24, 60]
    assert coefficients["c10"].leading_t_coefficients == [4, 20, 40]
    assert coefficients["c11"].leading_t_coefficients == [4, 20, 40]
    assert all(not coefficients[n].offending_monomials for n in COEFFICIENT_NAMES)


def test_paridade_d2(case_d2):
    """Testa (y−1) com potência par em c₀₀, c₁₁ e ímpar em c₀₁, c₁₀."""
    assert parity_pattern(case_d2["certificate"]) == {
        "c00": "even",
        "c01": "odd",
        "c10": "odd",
        "c11": "even",
    }


def test_certificado_serializavel(case_d2):
    """Testa to_dict do certificado."""
    payload = case_d2["certificate"].to_dict()

    assert payload["passed"] is True
    assert payload["coefficients"]["c00"]["y_minus_one_power"] == 6


def test_checagem_numerica_d2():
    """Testa H contra a avaliação direta em precisão estendida."""
    report = numeric_cross_check(2, samples=20, seed=5)

    assert report["pass"]
    assert report["max_relative_error"] < 1e-6


def test_d_nao_suportado():
    """Testa a rejeição de d fora de {2, 3, 4}."""
    with pytest.raises(ValueError):
        verify_hardcore_case(5)
    with pytest.raises(ValueError):
        numeric_cross_check(1)


@SLOW
@pytest.mark.parametrize(
    "d,powers,y_power",
    [(3, [10, 9, 9, 8], 4), (4, [14, 13, 13, 12], 6)],
)
def test_certificado_graus_maiores(d, powers, y_power):
    """Testa as potências de (y−1) e de y para Δ = 4 e Δ = 5."""
    report = verify_hardcore_case(d)
    coefficients = report["certificate"].coefficients

    assert report["passed"]
    assert [coefficients[n].y_minus_one_power for n in COEFFICIENT_NAMES] == powers
    assert all(coefficients[n].y_power == y_power for n in COEFFICIENT_NAMES)


def test_cotas_de_vies_do_ising():
    """Testa as cotas de viés e de escaladores para B = 0,1."""
    (report,) = ising_bias_checks([0.1], grid=5)

    assert report["odds_symmetric"]
    assert report["bias_pass"]
    assert report["weak_pass"]
    assert report["strong_pass"]
    assert report["inequality_pass"]
    assert report["evaluated"] > 0


def test_cotas_de_vies_fora_do_intervalo():
    """Testa a rejeição de B ≥ 3 − 2√2."""
    with pytest.raises(ValueError):
        ising_bias_checks([BIAS_LIMIT])
    with pytest.raises(ValueError):
        ising_bias_checks([0.0])
