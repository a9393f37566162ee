"""Exhaustive search result model."""

from typing import Optional

from pydantic import BaseModel, model_validator

from cfevrp.db.models.schedule import Schedule
from cfevrp.db.models.solver import SolverStatus


class OracleResult(BaseModel):
    """Ground-truth answer for a tiny instance."""

    status: SolverStatus
    cost: Optional[int] = None
    optimal: bool = False
    schedule: Optional[Schedule] = None
    states: int = 0

    @model_validator(mode="after")
    def _witness_iff_sat(self) -> "OracleResult":
        if (self.schedule is not None) != (self.status == SolverStatus.SAT):
            raise ValueError("a witness schedule is present exactly for sat results")
        return self
