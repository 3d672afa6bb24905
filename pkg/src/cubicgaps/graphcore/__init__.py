from .multigraph import (
    Multigraph,
    adjacency_matrix,
    spectrum,
    diameter_and_geodesic,
    is_bipartite,
    signatures,
    are_isomorphic,
    canonical_code,
    permute,
)
from .enumeration import enumerate_cubic_multigraphs, named_graph, NAMED_BUILDERS, graph_id
from .planarity import is_planar, PlanarityReport

__all__ = [
    "Multigraph",
    "adjacency_matrix",
    "spectrum",
    "diameter_and_geodesic",
    "is_bipartite",
    "signatures",
    "are_isomorphic",
    "canonical_code",
    "permute",
    "enumerate_cubic_multigraphs",
    "named_graph",
    "NAMED_BUILDERS",
    "graph_id",
    "is_planar",
    "PlanarityReport",
]
