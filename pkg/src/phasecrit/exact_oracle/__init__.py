"""
Oráculo exato para grafos pequenos: funções de partição, tabelas Z^{α,β},
estatísticas de pares, gadget condicionado e dinâmica de Glauber.
"""

from phasecrit.exact_oracle.errors import GuardExceededError
from phasecrit.exact_oracle.enumeration import (
    GADGET_MAX_SIDE,
    PARTITION_MAX_N,
    TABLE_MAX_N,
    as_counts,
    bimodality_report,
    gadget_conditional_Z,
    partition_function,
    vertex_marginals,
    z_alpha_beta_table,
)
from phasecrit.exact_oracle.overlap import OVERLAP_MAX_N, pair_overlap_statistics
from phasecrit.exact_oracle.glauber import glauber_run

__all__ = [
    "GuardExceededError",
    "GADGET_MAX_SIDE",
    "PARTITION_MAX_N",
    "TABLE_MAX_N",
    "OVERLAP_MAX_N",
    "as_counts",
    "bimodality_report",
    "gadget_conditional_Z",
    "partition_function",
    "vertex_marginals",
    "z_alpha_beta_table",
    "pair_overlap_statistics",
    "glauber_run",
]
