"""
Modelo que representa os pontos fixos das recursões de árvore e suas grandezas derivadas.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from phasecrit.utils.serialization import dataclass_to_dict


class Regime(str, Enum):
    """Regime de unicidade do modelo na árvore Δ-regular."""

    UNIQUENESS = "Uniqueness"
    NON_UNIQUENESS = "NonUniqueness"
    BOUNDARY = "Boundary"


@dataclass
class TreePhaseData:
    """
    Representa os pontos fixos Q⁺, Q⁻, Q* e as marginais q, p da raiz.

    Em unicidade Q_plus = Q_minus = Q_star. No regime de fronteira os
    pontos candidatos obtidos pelas iterações monótonas ficam em candidates.
    """

    q_plus: float
    q_minus: float
    q_star: float
    p_plus: float
    p_minus: float
    p_star: float
    Q_plus: float
    Q_minus: float
    Q_star: float
    omega: float
    omega_star: float
    regime: Regime
    residual: float = 0.0
    candidates: Optional[dict] = field(default=None)

    @property
    def has_distinct_phases(self) -> bool:
        return self.Q_plus > self.Q_minus

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)
