"""
Modelo que representa um multigrafo bipartido formado pela união de Δ emparelhamentos perfeitos.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np


@dataclass
class BipartiteMultigraph:
    """
    Representa G ∼ G(n, Δ): o emparelhamento k liga o vértice esquerdo i
    ao vértice direito matchings[k][i].
    """

    n: int
    delta: int
    matchings: List[np.ndarray]
    seed: Optional[int] = None
    rng: Optional[str] = None
    _adjacency: Optional[np.ndarray] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        self.matchings = [np.asarray(m, dtype=np.int64) for m in self.matchings]
        if len(self.matchings) != self.delta:
            raise ValueError(
                f"Esperados {self.delta} emparelhamentos, recebidos {len(self.matchings)}"
            )
        identidade = np.arange(self.n)
        for k, perm in enumerate(self.matchings):
            if perm.shape != (self.n,) or not np.array_equal(np.sort(perm), identidade):
                raise ValueError(f"O emparelhamento {k} não é uma permutação de 0..{self.n - 1}")

    def adjacency(self) -> np.ndarray:
        """
        Matriz n×n de multiplicidades: A[u, v] = número de arestas entre u e v.

        Returns:
            np.ndarray de inteiros
        """
        if self._adjacency is None:
            A = np.zeros((self.n, self.n), dtype=np.int64)
            rows = np.arange(self.n)
            for perm in self.matchings:
                np.add.at(A, (rows, perm), 1)
            self._adjacency = A
        return self._adjacency

    def degrees(self) -> tuple:
        A = self.adjacency()
        return A.sum(axis=1), A.sum(axis=0)

    def to_dict(self) -> dict:
        return {
            "kind": "bipartite_regular",
            "n": self.n,
            "delta": self.delta,
            "matchings": [perm.tolist() for perm in self.matchings],
            "labels": {},
            "seed": self.seed,
            "rng": self.rng,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BipartiteMultigraph":
        if data.get("kind") != "bipartite_regular":
            raise ValueError(f"Tipo de grafo não suportado: {data.get('kind')}")
        return cls(
            n=int(data["n"]),
            delta=int(data["delta"]),
            matchings=[np.asarray(m) for m in data["matchings"]],
            seed=data.get("seed"),
            rng=data.get("rng"),
        )
