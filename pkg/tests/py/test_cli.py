"""
Testes para a interface de linha de comando e a configuração.
"""

import json

import numpy as np
import pytest

from phasecrit.cli import SCHEMA, SWEEP_COLUMNS, main, parse_eta, parse_grid
from phasecrit.utils.config import config, get_default_seed, get_scaling_tol, get_threads


@pytest.fixture
def clean_config(monkeypatch):
    config.reset()
    yield monkeypatch
    config.reset()


def test_opcao_desconhecida():
    """Testa que erros de uso saem com código 2."""
    with pytest.raises(SystemExit) as exc_info:
        main(["tree", "--delta", "3", "--nao-existe"])
    assert exc_info.value.code == 2


def test_subcomando_tree(capsys):
    """Testa o relatório JSON do subcomando tree."""
    code = main(["tree", "--delta", "3", "--b1", "0.2", "--b2", "0.2", "--seed", "1"])
    report = json.loads(capsys.readouterr().out)

    assert code == 0
    assert report["schema"] == SCHEMA
    assert report["config"]["seed"] == 1
    assert report["results"]["phase"]["regime"] == "NonUniqueness"
    assert report["results"]["inequality"]["pass"]


def test_subcomando_grava_relatorio(tmp_path):
    """Testa --report gravando o JSON em arquivo."""
    path = tmp_path / "relatorio.json"
    code = main(["smallgraph", "--delta", "3", "--b1", "0.2", "--b2", "0.2", "--report", str(path)])
    report = json.loads(path.read_text(encoding="utf-8"))

    assert code == 0
    assert report["results"]["conditioning"]["max_len"] == 20


def test_varredura_csv(capsys):
    """Testa a varredura com cabeçalho CSV na saída padrão."""
    code = main(["sweep", "--preset", "ising-delta3", "--b-grid", "0.1:0.2:0.1"])
    lines = capsys.readouterr().out.strip().splitlines()

    assert code == 0
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert lines[0].startswith("parameter,value,")
    assert len(lines) == 3


def test_varredura_com_grade_errada(capsys):
    """Testa que uma grade de λ num preset de B falha com código 1."""
    code = main(["sweep", "--preset", "ising-delta3", "--lambda-grid", "1:2:1"])

    assert code == 1
    assert "error" in json.loads(capsys.readouterr().err)


def test_falha_de_calculo(capsys):
    """Testa o erro JSON na saída de erro para parâmetros inválidos."""
    code = main(["tree", "--delta", "3", "--b1", "-1"])
    error = json.loads(capsys.readouterr().err)

    assert code == 1
    assert error["schema"] == SCHEMA
    assert error["error"]["type"] == "ValueError"


def test_amostra_com_ciclos(tmp_path, capsys):
    """Testa sample gravando o grafo e contando ciclos."""
    path = tmp_path / "g.json"
    code = main(["sample", "--n", "6", "--delta", "3", "--cycles", "4", "--out", str(path), "--seed", "2"])
    report = json.loads(capsys.readouterr().out)

    assert code == 0
    assert path.exists()
    assert set(report["results"]["cycles"]) == {"2", "3", "4"}


def test_parse_grid():
    """Testa a grade a:b:passo inclusiva."""
    np.testing.assert_allclose(parse_grid("0.1:0.3:0.1"), [0.1, 0.2, 0.3])
    np.testing.assert_allclose(parse_grid("1:1:0.5"), [1.0])
    with pytest.raises(ValueError):
        parse_grid("1:2")
    with pytest.raises(ValueError):
        parse_grid("1:2:0")


def test_parse_eta():
    """Testa a leitura de η."""
    assert parse_eta("1,0,0,1") == [1, 0, 0, 1]
    with pytest.raises(ValueError):
        parse_eta("1,2")


def test_configuracao_pelo_ambiente(clean_config):
    """Testa a leitura das variáveis PHASECRIT_* e a validação."""
    clean_config.setenv("PHASECRIT_SEED", "42")
    clean_config.setenv("PHASECRIT_SCALING_TOL", "1e-10")
    clean_config.setenv("PHASECRIT_THREADS", "0")

    assert get_default_seed() == 42
    assert get_scaling_tol() == pytest.approx(1e-10)
    assert get_threads() == 1

    config.reset()
    clean_config.setenv("PHASECRIT_SEED", "abc")
    with pytest.raises(ValueError):
        get_default_seed()
