"""Utility modules for text formats and graph helpers."""

from .graph import diagram_graph, induced_matches, path_order
from .notation import format_basis, format_root, parse_basis, parse_root

__all__ = [
    # Notation
    "format_root",
    "parse_root",
    "format_basis",
    "parse_basis",
    # Graphs
    "diagram_graph",
    "induced_matches",
    "path_order",
]
