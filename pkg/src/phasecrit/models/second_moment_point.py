"""
Modelo que representa um ponto avaliado do expoente do segundo momento.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from phasecrit.utils.serialization import dataclass_to_dict


@dataclass
class SecondMomentPoint:
    """Representa (γ, δ) para (α, β) fixos, o maximizador 4×4 Y e o valor φ₂."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    Y: Optional[np.ndarray]
    phi2: float

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)
