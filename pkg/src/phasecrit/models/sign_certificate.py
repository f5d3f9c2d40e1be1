"""
Modelo que representa o certificado de sinais dos coeficientes c₀₀, c₀₁, c₁₀, c₁₁.
"""

from dataclasses import dataclass, field
from typing import Dict, List

from phasecrit.utils.serialization import dataclass_to_dict


@dataclass
class CoefficientCertificate:
    """
    Fatoração de um coeficiente após a reparametrização em (t, y).

    O coeficiente vale residual_sign·y^a·(y−1)^b·s^k·R/(1+t)^N, com
    s = t + 1 + y + … + y^{d−1} e R de coeficientes não negativos.
    """

    name: str
    y_power: int
    y_minus_one_power: int
    one_plus_t_power: int
    shifted_sum_power: int
    residual_terms: int
    residual_sign: int
    all_one_sign: bool
    leading_t_coefficients: List[int]
    offending_monomials: List[list] = field(default_factory=list)
    content_hash: str = ""

    @property
    def sign_for_y_above_one(self) -> int:
        """Sinal do coeficiente para y > 1 e t > 0."""
        return self.residual_sign

    @property
    def sign_for_y_below_one(self) -> int:
        """Sinal do coeficiente para 0 < y < 1 e t > 0."""
        return self.residual_sign * (-1) ** self.y_minus_one_power

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)


@dataclass
class SignCertificate:
    """Certificado completo para um valor de d."""

    d: int
    coefficients: Dict[str, CoefficientCertificate]
    case1_pass: bool
    case2_pass: bool

    @property
    def passed(self) -> bool:
        return self.case1_pass and self.case2_pass

    def to_dict(self) -> dict:
        result = dataclass_to_dict(self)
        result["passed"] = self.passed
        return result
