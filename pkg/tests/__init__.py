# Modulo com os tests do projeto

from .py import test_cli
from .py import test_entropy_scaling
from .py import test_exact_oracle
from .py import test_moment_analysis
from .py import test_poly_verify
from .py import test_random_graphs
from .py import test_smallgraph_conditioning
from .py import test_tree_criticality

__all__ = [
    "test_cli",
    "test_entropy_scaling",
    "test_exact_oracle",
    "test_moment_analysis",
    "test_poly_verify",
    "test_random_graphs",
    "test_smallgraph_conditioning",
    "test_tree_criticality",
]
