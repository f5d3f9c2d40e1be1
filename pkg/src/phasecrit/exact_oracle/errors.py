"""
Exceções do oráculo exato.
"""


class GuardExceededError(Exception):
    """Exceção lançada quando o tamanho da instância excede o limite da enumeração exata."""

    pass
