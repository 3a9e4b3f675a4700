"""Admissible vertex enumeration by type-tree traversal."""

from .problem import ParseError, ProblemInstance, ReducedSystem, parse_problem
from .traversal import (
    Signal,
    TraversalStats,
    VertexSolution,
    collect,
    enumerate_parallel,
    enumerate_vertices,
    reconstruct_vertex,
)

__all__ = [
    "ParseError",
    "ProblemInstance",
    "ReducedSystem",
    "Signal",
    "TraversalStats",
    "VertexSolution",
    "collect",
    "enumerate_parallel",
    "enumerate_vertices",
    "parse_problem",
    "reconstruct_vertex",
]
