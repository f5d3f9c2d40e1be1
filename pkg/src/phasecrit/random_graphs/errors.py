"""
Exceções dos amostradores e contadores de grafos.
"""


class CycleGuardError(Exception):
    """Exceção lançada quando o comprimento máximo de ciclo excede o limite da enumeração."""

    pass


class SpectrumMismatchError(Exception):
    """Exceção lançada quando o espectro numérico da matriz de transição diverge das formas fechadas."""

    def __init__(self, message: str, details: dict = None):
        super().__init__(message)
        self.details = details or {}
