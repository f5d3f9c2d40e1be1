"""
Exceções da verificação polinomial exata.
"""


class InexactDivisionError(Exception):
    """Exceção lançada quando uma divisão que deveria ser exata deixa resto."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class PipelineStageError(Exception):
    """Exceção lançada quando um estágio do pipeline falha; guarda o nome do estágio."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
