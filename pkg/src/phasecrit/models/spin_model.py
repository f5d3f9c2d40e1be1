"""
Modelo que representa um sistema de 2 spins sobre grafos Δ-regulares.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SpinModel:
    """
    Representa os parâmetros (B₁, B₂, λ, Δ) de um sistema de 2 spins.

    b1 é a atividade das arestas (−,−), b2 a das arestas (+,+) e lam a
    atividade de vértice do spin −1.
    """

    b1: float
    b2: float
    lam: float
    delta: int

    def __post_init__(self):
        if self.b1 < 0:
            raise ValueError(f"b1 deve ser não negativo: {self.b1}")
        if self.b2 <= 0:
            raise ValueError(f"b2 deve ser positivo: {self.b2}")
        if self.lam <= 0:
            raise ValueError(f"lambda deve ser positivo: {self.lam}")
        if int(self.delta) != self.delta or self.delta < 1:
            raise ValueError(f"delta deve ser um inteiro positivo: {self.delta}")

    @classmethod
    def hard_core(cls, lam: float, delta: int) -> "SpinModel":
        """Modelo hard-core (B₁=0, B₂=1) com fugacidade lam."""
        return cls(b1=0.0, b2=1.0, lam=lam, delta=delta)

    @classmethod
    def ising(cls, b: float, delta: int, lam: float = 1.0) -> "SpinModel":
        """Modelo de Ising antiferromagnético com B₁=B₂=b."""
        return cls(b1=b, b2=b, lam=lam, delta=delta)

    @property
    def d(self) -> int:
        """Grau de ramificação Δ−1."""
        return self.delta - 1

    @property
    def is_antiferromagnetic(self) -> bool:
        return self.b1 * self.b2 < 1

    @property
    def is_hard_core(self) -> bool:
        return self.b1 == 0 and self.b2 == 1

    @property
    def is_ising_no_field(self) -> bool:
        return self.b1 == self.b2 and self.lam == 1

    def validate_tree_regime(self) -> None:
        """Exige Δ ≥ 3, necessário para as recursões na árvore."""
        if self.delta < 3:
            raise ValueError(f"As recursões de árvore exigem delta >= 3: {self.delta}")

    def edge_matrix(self):
        """Matriz de interação [[B₁, 1], [1, B₂]] indexada por (−, +)."""
        return np.array([[self.b1, 1.0], [1.0, self.b2]])

    def swapped(self) -> "SpinModel":
        """Modelo obtido trocando os rótulos dos spins: (B₂, B₁, 1/λ)."""
        return SpinModel(b1=self.b2, b2=self.b1, lam=1.0 / self.lam, delta=self.delta)

    def to_dict(self) -> dict:
        return {
            "b1": self.b1,
            "b2": self.b2,
            "lambda": self.lam,
            "delta": self.delta,
            "antiferromagnetic": self.is_antiferromagnetic,
            "hard_core": self.is_hard_core,
        }
