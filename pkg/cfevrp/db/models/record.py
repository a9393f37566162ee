"""Benchmark record model."""

import enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from cfevrp.db.models.report import ValidationReport
from cfevrp.db.models.schedule import Schedule

CSV_COLUMNS = ("instance", "cell", "status", "gt_s", "st_s", "cost", "timeout")


class RunStatus(str, enum.Enum):
    """Outcome of one benchmark run."""

    SAT = "sat"
    UNSAT = "unsat"
    TIMEOUT = "timeout"


class BenchRecord(BaseModel):
    """One row of the results CSV."""

    instance: str
    cell: str = Field(..., description="class/reduction/deadline, e.g. 15-3-5/r0/d15")
    status: RunStatus
    gt_s: float = Field(..., ge=0, description="Model generation time")
    st_s: float = Field(..., ge=0, description="Solve time")
    cost: Optional[int] = None
    timeout: bool = False

    @model_validator(mode="after")
    def _cost_iff_sat(self) -> "BenchRecord":
        if (self.cost is not None) != (self.status == RunStatus.SAT):
            raise ValueError("cost is present exactly for sat records")
        return self

    def to_row(self) -> list[str]:
        return [
            self.instance,
            self.cell,
            self.status.value,
            f"{self.gt_s:.3f}",
            f"{self.st_s:.3f}",
            "" if self.cost is None else str(self.cost),
            "1" if self.timeout else "0",
        ]

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "BenchRecord":
        return cls(
            instance=row["instance"],
            cell=row["cell"],
            status=RunStatus(row["status"]),
            gt_s=float(row["gt_s"]),
            st_s=float(row["st_s"]),
            cost=int(row["cost"]) if row["cost"] else None,
            timeout=row["timeout"] == "1",
        )


class SolveResult(BaseModel):
    """Everything one pipeline run produced."""

    record: BenchRecord
    schedule: Optional[Schedule] = None
    report: Optional[ValidationReport] = None
    optimal: bool = False
    core_families: list[str] = Field(default_factory=list)
