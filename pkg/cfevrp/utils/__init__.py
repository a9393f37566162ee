"""Utility packages."""

from .solver_locator import advertises_optimization, resolve_solver

__all__ = ["advertises_optimization", "resolve_solver"]
