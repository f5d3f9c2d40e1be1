"""
Módulo de modelos de dados para o phasecrit.

Este módulo contém todas as classes de modelos de dados utilizadas pelo sistema.
"""

from phasecrit.models.spin_model import SpinModel
from phasecrit.models.tree_phase import Regime, TreePhaseData
from phasecrit.models.marginal_spec import MarginalSpec
from phasecrit.models.scaling_solution import ScalingSolution
from phasecrit.models.first_moment_point import FirstMomentPoint
from phasecrit.models.second_moment_point import SecondMomentPoint
from phasecrit.models.asymptotic_constants import AsymptoticConstants
from phasecrit.models.bipartite_multigraph import BipartiteMultigraph
from phasecrit.models.gadget_graph import GadgetGraph, GadgetTree
from phasecrit.models.gibbs_summary import GibbsSummary
from phasecrit.models.conditioning_data import ConditioningData
from phasecrit.models.sign_certificate import CoefficientCertificate, SignCertificate
from phasecrit.models.run_config import RunConfig

__all__ = [
    "SpinModel",
    "Regime",
    "TreePhaseData",
    "MarginalSpec",
    "ScalingSolution",
    "FirstMomentPoint",
    "SecondMomentPoint",
    "AsymptoticConstants",
    "BipartiteMultigraph",
    "GadgetGraph",
    "GadgetTree",
    "GibbsSummary",
    "ConditioningData",
    "CoefficientCertificate",
    "SignCertificate",
    "RunConfig",
]
