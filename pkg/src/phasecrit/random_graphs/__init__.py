"""
Grafos aleatórios: amostradores de G(n, Δ) e do gadget, contagem de ciclos,
fase de configurações e espectro da matriz de transição.
"""

from phasecrit.random_graphs.errors import CycleGuardError, SpectrumMismatchError
from phasecrit.random_graphs.sampling import (
    RNG_NAME,
    gadget_parameters,
    make_rng,
    phase,
    sample_bipartite_regular,
    sample_gadget,
    split_seeds,
)
from phasecrit.random_graphs.cycles import (
    MAX_CYCLE_LEN,
    count_cycles,
    expected_cycle_rate,
    proper_edge_colorings,
)
from phasecrit.random_graphs.spectrum import transition_matrix, transition_matrix_spectrum
from phasecrit.random_graphs.graph_io import graph_from_dict, read_graph, write_graph

__all__ = [
    "CycleGuardError",
    "SpectrumMismatchError",
    "RNG_NAME",
    "gadget_parameters",
    "make_rng",
    "phase",
    "sample_bipartite_regular",
    "sample_gadget",
    "split_seeds",
    "MAX_CYCLE_LEN",
    "count_cycles",
    "expected_cycle_rate",
    "proper_edge_colorings",
    "transition_matrix",
    "transition_matrix_spectrum",
    "graph_from_dict",
    "read_graph",
    "write_graph",
]
