"""phasecrit - Análise de segundo momento de sistemas de 2 spins antiferromagnéticos."""

__version__ = "1.0"

from phasecrit.models import SpinModel, TreePhaseData
from phasecrit.tree_criticality import classify_uniqueness, solve_tree_fixed_points
from phasecrit.moment_analysis import moment_ratio_limit, phi1, phi2
from phasecrit.poly_verify import verify_hardcore_case

__all__ = [
    "SpinModel",
    "TreePhaseData",
    "classify_uniqueness",
    "solve_tree_fixed_points",
    "moment_ratio_limit",
    "phi1",
    "phi2",
    "verify_hardcore_case",
]
