"""
Módulo de configuração e gerenciamento de variáveis de ambiente.

Este módulo fornece funções para carregar e acessar tolerâncias numéricas,
sementes e limites de paralelismo a partir de arquivos .env do projeto.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv


class Config:
    """
    Classe responsável por gerenciar configurações e variáveis de ambiente.

    Carrega configurações de arquivos .env do projeto.
    Fornece acesso centralizado às tolerâncias e limites usados pelos solvers.
    """

    _instance = None
    _is_initialized = False
    _config_values: Dict[str, Any] = {}

    def __new__(cls):
        """Implementação de singleton para garantir uma única instância da configuração."""
        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        """Inicializa a configuração carregando o arquivo .env se ainda não tiver sido inicializado."""
        if not Config._is_initialized:
            self._load_env_file()
            Config._is_initialized = True

    def _load_env_file(self, env_path: Optional[str] = None) -> None:
        """
        Carrega as variáveis de ambiente de um arquivo .env.

        Args:
            env_path: Caminho opcional para o arquivo .env.
                     Se não for fornecido, tenta localizar o arquivo automaticamente.
        """
        if env_path:
            env_file = Path(env_path)
        else:
            possible_paths = [
                Path(".env"),  # Diretório atual
                Path(__file__).parents[3] / ".env",  # Raiz do projeto
            ]

            env_file = next((path for path in possible_paths if path.exists()), None)

        if env_file and env_file.exists():
            load_dotenv(dotenv_path=str(env_file), override=True)

    def get(self, key: str, default: Any = None) -> Any:
        """
        Obtém uma configuração pelo nome.

        Verifica primeiro as configurações carregadas, depois as variáveis de ambiente.

        Args:
            key: Nome da configuração
            default: Valor padrão caso a configuração não exista

        Returns:
            Valor da configuração ou o valor padrão
        """
        if key in self._config_values:
            return self._config_values[key]

        value = os.environ.get(key, default)
        self._config_values[key] = value

        return value

    def set(self, key: str, value: Any) -> None:
        """
        Define uma configuração em tempo de execução.

        Args:
            key: Nome da configuração
            value: Valor da configuração
        """
        self._config_values[key] = value

    def reset(self) -> None:
        """Descarta o cache de valores (usado pelos testes após alterar o ambiente)."""
        self._config_values.clear()

    def _get_float(self, key: str, default: float) -> float:
        value = self.get(key, default)
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ValueError(f"Valor inválido para {key}: {value!r}")

    def _get_int(self, key: str, default: int) -> int:
        value = self.get(key, default)
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ValueError(f"Valor inválido para {key}: {value!r}")

    def get_scaling_tol(self) -> float:
        """
        Obtém o resíduo relativo máximo aceito nas marginais do escalonamento.

        Returns:
            Tolerância do escalonamento alternado
        """
        return self._get_float("PHASECRIT_SCALING_TOL", 1e-13)

    def get_max_sweeps(self) -> int:
        """
        Obtém o número máximo de varreduras do escalonamento alternado.

        Returns:
            Limite de varreduras
        """
        return self._get_int("PHASECRIT_MAX_SWEEPS", 100000)

    def get_fixed_point_tol(self) -> float:
        """
        Obtém o resíduo relativo exigido dos pontos fixos das recursões de árvore.

        Returns:
            Tolerância dos pontos fixos
        """
        return self._get_float("PHASECRIT_FIXED_POINT_TOL", 1e-12)

    def get_boundary_tol(self) -> float:
        """
        Obtém a largura da faixa de fronteira para (Δ−1)²ω*.

        Returns:
            Tolerância de fronteira
        """
        return self._get_float("PHASECRIT_BOUNDARY_TOL", 1e-8)

    def get_default_seed(self) -> int:
        """
        Obtém a semente padrão dos amostradores.

        Returns:
            Semente inteira
        """
        return self._get_int("PHASECRIT_SEED", 0)

    def get_threads(self) -> int:
        """
        Obtém o teto de paralelismo para varreduras e lotes Monte Carlo.

        Returns:
            Número máximo de workers (pelo menos 1)
        """
        return max(1, self._get_int("PHASECRIT_THREADS", os.cpu_count() or 1))

    def get_log_level(self) -> str:
        """
        Obtém o nível de logging configurado pela CLI.

        Returns:
            Nome do nível (ex.: "WARNING")
        """
        return str(self.get("PHASECRIT_LOG_LEVEL", "WARNING")).upper()


# Instância global da configuração para fácil acesso
config = Config()


def get_config(key: str, default: Any = None) -> Any:
    """
    Obtém uma configuração pelo nome.

    Args:
        key: Nome da configuração
        default: Valor padrão caso a configuração não exista

    Returns:
        Valor da configuração ou o valor padrão
    """
    return config.get(key, default)


def get_scaling_tol() -> float:
    """Obtém a tolerância do escalonamento alternado."""
    return config.get_scaling_tol()


def get_max_sweeps() -> int:
    """Obtém o limite de varreduras do escalonamento alternado."""
    return config.get_max_sweeps()


def get_fixed_point_tol() -> float:
    """Obtém a tolerância dos pontos fixos das recursões de árvore."""
    return config.get_fixed_point_tol()


def get_boundary_tol() -> float:
    """Obtém a tolerância de fronteira de unicidade."""
    return config.get_boundary_tol()


def get_default_seed() -> int:
    """Obtém a semente padrão."""
    return config.get_default_seed()


def get_threads() -> int:
    """Obtém o teto de paralelismo."""
    return config.get_threads()


def get_log_level() -> str:
    """Obtém o nível de logging."""
    return config.get_log_level()
