"""Random instance generation."""

from .generate import generate, generate_suite, grid_graph, iter_suite_specs, node_name
from .spec import DEADLINES, REDUCTIONS, GenSpec, InstanceClass

__all__ = [
    "DEADLINES",
    "GenSpec",
    "InstanceClass",
    "REDUCTIONS",
    "generate",
    "generate_suite",
    "grid_graph",
    "iter_suite_specs",
    "node_name",
]
