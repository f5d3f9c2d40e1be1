# Modulo com os tests da biblioteca phasecrit

from . import test_cli
from . import test_entropy_scaling
from . import test_exact_oracle
from . import test_moment_analysis
from . import test_poly_verify
from . import test_random_graphs
from . import test_smallgraph_conditioning
from . import test_tree_criticality

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
