"""
Modelo que representa o resumo exato da distribuição de Gibbs de um grafo pequeno.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from phasecrit.utils.serialization import serialize


@dataclass
class GibbsSummary:
    """
    Representa log Z e a tabela log Z^{α,β} indexada por (αn₁, βn₂).

    Células sem configurações têm valor -inf.
    """

    logZ: float
    log_z_table: np.ndarray

    @property
    def n_left(self) -> int:
        return self.log_z_table.shape[0] - 1

    @property
    def n_right(self) -> int:
        return self.log_z_table.shape[1] - 1

    @property
    def z_table(self) -> np.ndarray:
        """Tabela Z^{α,β} em escala linear, normalizada por Z (probabilidades μ(Σ^{α,β}))."""
        return np.exp(self.log_z_table - self.logZ)

    @property
    def dominant_cell(self) -> tuple:
        a, b = np.unravel_index(np.argmax(self.log_z_table), self.log_z_table.shape)
        return int(a), int(b)

    @property
    def log_mu_balanced(self) -> float:
        diagonal = np.diagonal(self.log_z_table)
        return float(logsumexp(diagonal) - self.logZ)

    @property
    def mu_balanced(self) -> float:
        return float(np.exp(self.log_mu_balanced))

    def log_mu_unbalanced(self, rho: float) -> float:
        """
        Log da massa de Σ^ρ: configurações com |α − β| ≥ ρ.

        Args:
            rho: Desequilíbrio mínimo em (0, 1)

        Returns:
            float (pode ser -inf quando Σ^ρ é vazio)
        """
        a = np.arange(self.n_left + 1)[:, None] / max(self.n_left, 1)
        b = np.arange(self.n_right + 1)[None, :] / max(self.n_right, 1)
        mask = np.abs(a - b) >= rho - 1e-12
        if not np.any(mask):
            return float("-inf")
        return float(logsumexp(self.log_z_table[mask]) - self.logZ)

    def mu_unbalanced(self, rho: float) -> float:
        return float(np.exp(self.log_mu_unbalanced(rho)))

    def to_dict(self) -> dict:
        return {
            "logZ": serialize(self.logZ),
            "log_z_table": serialize(self.log_z_table),
            "dominant_cell": list(self.dominant_cell),
            "mu_balanced": serialize(self.mu_balanced),
        }
