"""Unitary eigenvalues of non-backtracking matrices of multigraphs."""

from .chains import (Chain, ChainComponent, ChainStructure, chain_components, collapse,
                     enumerate_chains, get_chains, max_subdivision_number)
from .eigenfunctions import (EigenBasis, circle_basis, lift_through_subdivision,
                             minus_one_basis, plus_one_basis, unitary_basis,
                             verify_eigenfunction)
from .graph import (GraphError, Multigraph, ParseError, as_circle, bipartite, bouquet,
                    complete_bipartite, complete_graph, connected_components, cycle_graph,
                    cycle_rank, glue, is_bipartite, parse_graph, read_graph, subdivide,
                    theta_graph, two_core, write_graph)
from .multiplicity import (am_real, gluing_sites, gm, gm_real, gm_unitary,
                           unitary_spectrum)
from .nb_operator import apply_nb, build_nb_matrix, leaky_nodes, oriented_edges

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "ChainComponent",
    "ChainStructure",
    "chain_components",
    "collapse",
    "enumerate_chains",
    "get_chains",
    "max_subdivision_number",
    "EigenBasis",
    "circle_basis",
    "lift_through_subdivision",
    "minus_one_basis",
    "plus_one_basis",
    "unitary_basis",
    "verify_eigenfunction",
    "GraphError",
    "Multigraph",
    "ParseError",
    "as_circle",
    "bipartite",
    "bouquet",
    "complete_bipartite",
    "complete_graph",
    "connected_components",
    "cycle_graph",
    "cycle_rank",
    "glue",
    "is_bipartite",
    "parse_graph",
    "read_graph",
    "subdivide",
    "theta_graph",
    "two_core",
    "write_graph",
    "am_real",
    "gluing_sites",
    "gm",
    "gm_real",
    "gm_unitary",
    "unitary_spectrum",
    "apply_nb",
    "build_nb_matrix",
    "leaky_nodes",
    "oriented_edges",
]
