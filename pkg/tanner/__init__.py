"""tanner module - Tanner graphs with the (z, i, j) edge structure of the stacked matrix."""

from .graph import (
    GraphConsistencyError,
    StructuredTannerGraph,
    TannerGraph,
    build_graph,
    check_edges,
    formula_edge_set,
    matrix_edge_set,
    pi,
    variable_edges,
)

__all__ = [
    "GraphConsistencyError",
    "StructuredTannerGraph",
    "TannerGraph",
    "build_graph",
    "check_edges",
    "formula_edge_set",
    "matrix_edge_set",
    "pi",
    "variable_edges",
]
