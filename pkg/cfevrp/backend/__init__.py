"""External SMT solver backend."""

from .config import SolverConfig
from .driver import run_solver
from .emit import emit_smtlib
from .optimize import (
    check_model_authenticity,
    effective_mode,
    optimize_by_bound_search,
    solve_encoded,
)
from .reader import read_reply

__all__ = [
    "SolverConfig",
    "check_model_authenticity",
    "effective_mode",
    "emit_smtlib",
    "optimize_by_bound_search",
    "read_reply",
    "run_solver",
    "solve_encoded",
]
