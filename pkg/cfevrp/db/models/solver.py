"""Solver outcome models."""

import enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class SolverStatus(str, enum.Enum):
    """Answer of a satisfiability check."""

    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


class SolverModel(BaseModel):
    """Satisfying assignment read back from the solver."""

    booleans: dict[str, bool] = Field(default_factory=dict)
    integers: dict[str, int] = Field(default_factory=dict)

    def is_true(self, name: str) -> bool:
        """Absent Boolean variables read as false (model completion)."""
        return self.booleans.get(name, False)


class SolverOutcome(BaseModel):
    """Result of one solver run."""

    status: SolverStatus
    model: Optional[SolverModel] = None
    solve_time: float = Field(default=0.0, ge=0)
    generation_time: float = Field(default=0.0, ge=0)
    timed_out: bool = False
    unsat_core: list[str] = Field(default_factory=list)
    errors: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _model_iff_sat(self) -> "SolverOutcome":
        if (self.model is not None) != (self.status == SolverStatus.SAT):
            raise ValueError("a model is present exactly for sat outcomes")
        return self

    @property
    def core_families(self) -> list[str]:
        """Constraint families named by the unsat core (``f<family>_<seq>``)."""
        families = []
        for name in self.unsat_core:
            if name.startswith("f") and "_" in name:
                family = name[1:].rsplit("_", 1)[0]
                if family not in families:
                    families.append(family)
        return families


class OptimizationResult(BaseModel):
    """Best model found by bound search."""

    outcome: SolverOutcome
    best_cost: Optional[int] = None
    optimal: bool = False
    iterations: int = 0
