"""
Exceções da análise de momentos.
"""


class CriticalPointError(Exception):
    """Exceção lançada quando um ponto crítico não passa na verificação de estacionariedade ou de Hessiana."""

    def __init__(self, message: str, details: dict = None):
        super().__init__(message)
        self.details = details or {}


class RegionError(Exception):
    """Exceção lançada para parâmetros fora da região admissível."""

    pass


class RoundingError(Exception):
    """Exceção lançada quando αn, βn, γn ou δn não são inteiros."""

    pass


class CompetingMaximumError(Exception):
    """Exceção lançada quando a busca global encontra um máximo de φ₂ fora de (α², β²)."""

    def __init__(self, message: str, witness: dict = None):
        super().__init__(message)
        self.witness = witness or {}
