"""
Modelo que representa as grandezas do condicionamento em ciclos curtos.
"""

from dataclasses import dataclass
from typing import Dict, List

from phasecrit.utils.serialization import dataclass_to_dict


@dataclass
class ConditioningData:
    """
    Representa λᵢ e δᵢ para i par até max_len, a forma fechada de
    exp(Σ λᵢδᵢ²) e as somas parciais correspondentes.
    """

    max_len: int
    omega: float
    lambdas: Dict[int, float]
    deltas: Dict[int, float]
    sum_closed_form: float
    partial_sums: List[float]
    tail_bound: float

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)
