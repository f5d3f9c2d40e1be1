"""
Modelo que representa o grafo gadget: um multigrafo bipartido com árvores anexadas.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np


@dataclass
class GadgetTree:
    """Uma árvore (Δ−1)-ária de profundidade ℓ cujas folhas são vértices de U."""

    side: str
    root: int
    internal: List[int]
    leaves: List[int]
    edges: List[tuple]


@dataclass
class GadgetGraph:
    """
    Representa o gadget H.

    gbar tem lados de tamanho n+m′: os índices 0..n−1 formam W e n..n+m′−1
    formam U. Há Δ−1 emparelhamentos sobre todos os vértices e um
    emparelhamento extra apenas entre W₊ e W₋. Na numeração global de H o
    vértice esquerdo i é i, o direito j é (n+m′)+j e os vértices internos
    das árvores vêm a partir de 2(n+m′).
    """

    n: int
    delta: int
    m_prime: int
    k: int
    ell: int
    theta: float
    psi: float
    matchings: List[np.ndarray]
    w_matching: np.ndarray
    trees: List[GadgetTree] = field(default_factory=list)
    seed: Optional[int] = None
    rng: Optional[str] = None
    asymptotic_warning: bool = False

    @property
    def side_size(self) -> int:
        return self.n + self.m_prime

    @property
    def num_vertices(self) -> int:
        return 2 * self.side_size + sum(len(tree.internal) for tree in self.trees)

    @property
    def labels(self) -> Dict[str, List[int]]:
        """Rótulos W₊, U₊, W₋, U₋, R₊, R₋ na numeração global de H."""
        N = self.side_size
        return {
            "W+": list(range(self.n)),
            "U+": list(range(self.n, N)),
            "W-": list(range(N, N + self.n)),
            "U-": list(range(N + self.n, 2 * N)),
            "R+": [tree.root for tree in self.trees if tree.side == "+"],
            "R-": [tree.root for tree in self.trees if tree.side == "-"],
        }

    def gbar_adjacency(self) -> np.ndarray:
        """
        Matriz (n+m′)×(n+m′) de multiplicidades de gbar.

        Returns:
            np.ndarray de inteiros
        """
        N = self.side_size
        A = np.zeros((N, N), dtype=np.int64)
        rows = np.arange(N)
        for perm in self.matchings:
            np.add.at(A, (rows, perm), 1)
        np.add.at(A, (np.arange(self.n), self.w_matching), 1)
        return A

    def edges(self) -> List[tuple]:
        """Lista de arestas de H (com multiplicidade) na numeração global."""
        N = self.side_size
        result = []
        for perm in self.matchings:
            result.extend((int(i), N + int(j)) for i, j in enumerate(perm))
        result.extend((int(i), N + int(j)) for i, j in enumerate(self.w_matching))
        for tree in self.trees:
            result.extend(tree.edges)
        return result

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_vertices, dtype=np.int64)
        for u, v in self.edges():
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_dict(self) -> dict:
        return {
            "kind": "gadget",
            "n": self.n,
            "delta": self.delta,
            "m_prime": self.m_prime,
            "k": self.k,
            "ell": self.ell,
            "theta": self.theta,
            "psi": self.psi,
            "matchings": [perm.tolist() for perm in self.matchings],
            "w_matching": self.w_matching.tolist(),
            "trees": [
                {
                    "side": tree.side,
                    "root": tree.root,
                    "internal": tree.internal,
                    "leaves": tree.leaves,
                    "edges": [list(e) for e in tree.edges],
                }
                for tree in self.trees
            ],
            "labels": self.labels,
            "num_vertices": self.num_vertices,
            "asymptotic_warning": self.asymptotic_warning,
            "seed": self.seed,
            "rng": self.rng,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GadgetGraph":
        if data.get("kind") != "gadget":
            raise ValueError(f"Tipo de grafo não suportado: {data.get('kind')}")
        trees = [
            GadgetTree(
                side=t["side"],
                root=int(t["root"]),
                internal=[int(v) for v in t["internal"]],
                leaves=[int(v) for v in t["leaves"]],
                edges=[tuple(e) for e in t["edges"]],
            )
            for t in data.get("trees", [])
        ]
        return cls(
            n=int(data["n"]),
            delta=int(data["delta"]),
            m_prime=int(data["m_prime"]),
            k=int(data["k"]),
            ell=int(data["ell"]),
            theta=float(data["theta"]),
            psi=float(data["psi"]),
            matchings=[np.asarray(m, dtype=np.int64) for m in data["matchings"]],
            w_matching=np.asarray(data["w_matching"], dtype=np.int64),
            trees=trees,
            seed=data.get("seed"),
            rng=data.get("rng"),
            asymptotic_warning=bool(data.get("asymptotic_warning", False)),
        )
