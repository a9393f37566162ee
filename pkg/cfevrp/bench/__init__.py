"""Benchmark harness, result summaries and route plots."""

from .harness import bench, cell_of, solve_instance, solve_one
from .plot import plot
from .table import CellSummary, render_summary, summarize

__all__ = [
    "CellSummary",
    "bench",
    "cell_of",
    "plot",
    "render_summary",
    "solve_instance",
    "solve_one",
    "summarize",
]
