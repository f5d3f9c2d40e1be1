"""
Modelo que representa um ponto avaliado do expoente do primeiro momento.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from phasecrit.utils.serialization import dataclass_to_dict


@dataclass
class FirstMomentPoint:
    """Representa (α, β), o maximizador 2×2 X e o valor φ₁ (nats por vértice)."""

    alpha: float
    beta: float
    X: Optional[np.ndarray]
    phi1: float

    @property
    def feasible(self) -> bool:
        return np.isfinite(self.phi1)

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)
