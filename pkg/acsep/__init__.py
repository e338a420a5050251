"""Almost-clique minimal separators via minimal triangulations, and the treewidth
preprocessing built on them."""

from .acs import (AcsMethod, AcsResult, PreprocessResult, acs_from_triangulation, all_acs,
                  greedy_max, heuristic_list, max_list, preprocess, standard_list)
from .cliquesep import Decomposition, clique_minimal_separators, decompose
from .graph import Graph, GraphError
from .separators import Separator
from .triangulation import Method, Triangulation, minimalize, mcs_m, triangulate

__all__ = [
    'AcsMethod', 'AcsResult', 'PreprocessResult', 'acs_from_triangulation', 'all_acs',
    'greedy_max', 'heuristic_list', 'max_list', 'preprocess', 'standard_list', 'Decomposition',
    'clique_minimal_separators', 'decompose', 'Graph', 'GraphError', 'Separator', 'Method',
    'Triangulation', 'minimalize', 'mcs_m', 'triangulate',
]
