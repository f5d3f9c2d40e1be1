"""
Modelo que representa as constantes assintóticas dos momentos em (p⁺, p⁻).
"""

from dataclasses import dataclass

from phasecrit.utils.serialization import dataclass_to_dict


@dataclass
class AsymptoticConstants:
    """
    Representa E₁, E₂, E₃, os prefatores de Laplace e a razão limite.

    identity_residual guarda |E₁E₂E₃/P² − (1−ω²)|, onde
    P = (B₂+Q⁻)(B₂+Q⁺)(1+B₁Q⁻)(1+B₁Q⁺).
    """

    E1: float
    E2: float
    E3: float
    first_prefactor: float
    second_prefactor: float
    ratio_limit: float
    quadratic_form_det: float
    identity_residual: float

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)
