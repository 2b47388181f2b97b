"""Edge-level degree-difference analysis for complex networks.

The package bundles the degree difference (DD) measure and its directed
variant, comparison measures (Forman-Ricci, Ollivier-Ricci, edge
betweenness), assortativity machinery, closed-form DD distributions for
random-graph ensembles, and the robustness / rewiring experiments built on
top of them.
"""

__version__ = "0.1.0"

from .graph import Graph, largest_connected_component, hop_distances, collapse_to_undirected

__all__ = [
    "Graph",
    "largest_connected_component",
    "hop_distances",
    "collapse_to_undirected",
    "__version__",
]
