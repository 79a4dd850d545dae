"""Solver suite for vertex-coloring {0,1} edge-weighting and its pre-weighting variant."""

from vcew.graph import (
    Edge,
    Graph,
    GraphBuilder,
    PartialWeightAssignment,
    WeightAssignment,
    edge_key,
    find_conflicts,
    from_subgraph,
    induced_colors,
    is_proper,
    isolated_edges,
    solution_subgraph,
)

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "Graph",
    "GraphBuilder",
    "PartialWeightAssignment",
    "WeightAssignment",
    "edge_key",
    "find_conflicts",
    "from_subgraph",
    "induced_colors",
    "is_proper",
    "isolated_edges",
    "solution_subgraph",
    "__version__",
]
