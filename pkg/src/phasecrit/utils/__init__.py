"""
Utilitários para o phasecrit.

Este módulo contém funções e classes utilitárias usadas em todo o projeto.
"""

from phasecrit.utils.config import (
    get_config,
    get_scaling_tol,
    get_max_sweeps,
    get_fixed_point_tol,
    get_boundary_tol,
    get_default_seed,
    get_threads,
    get_log_level,
    config,
)

from phasecrit.utils.serialization import serialize, dataclass_to_dict

__all__ = [
    "get_config",
    "get_scaling_tol",
    "get_max_sweeps",
    "get_fixed_point_tol",
    "get_boundary_tol",
    "get_default_seed",
    "get_threads",
    "get_log_level",
    "config",
    "serialize",
    "dataclass_to_dict",
]
