"""
Modelo que representa o maximizador do programa de entropia com marginais prescritas.
"""

from dataclasses import dataclass

import numpy as np

from phasecrit.utils.serialization import dataclass_to_dict


@dataclass
class ScalingSolution:
    """
    Representa a solução Z* = diag(R) M diag(C) e o valor ótimo g*.

    Linhas ou colunas com marginal nula têm escalador 0; o gauge é fixado
    com o primeiro escalador de linha positivo igual a 1.
    """

    R: np.ndarray
    C: np.ndarray
    Z_star: np.ndarray
    g_star: float
    sweeps: int = 0
    residual: float = 0.0

    @property
    def support(self) -> np.ndarray:
        return self.Z_star > 0

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)
