import enum
import re
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class InstanceClass(str, enum.Enum):
    """Nodes-vehicles-jobs family of generated instances."""

    SMALL = "15-3-5"
    MEDIUM = "25-4-7"
    LARGE = "35-6-8"

    @property
    def grid(self) -> tuple[int, int]:
        """(columns, rows) of the layout grid."""
        return {"15-3-5": (5, 3), "25-4-7": (5, 5), "35-6-8": (5, 7)}[self.value]

    @property
    def vehicles(self) -> int:
        return int(self.value.split("-")[1])

    @property
    def jobs(self) -> int:
        return int(self.value.split("-")[2])

    def removed_pairs(self, reduction: int) -> int:
        """Edge pairs removed for a reduction percentage."""
        step = {"15-3-5": 3, "25-4-7": 6, "35-6-8": 9}[self.value]
        return {0: 0, 25: step, 50: 2 * step}[reduction]


REDUCTIONS = (0, 25, 50)
DEADLINES = (15, 20, 25, 30)


class GenSpec(BaseModel):
    """Parameters of one generated instance."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    instance_class: InstanceClass = Field(..., alias="class")
    edge_reduction: int = 0
    deadline: int = Field(default=15, ge=1)
    seed: int = Field(default=0, ge=0)

    @field_validator("edge_reduction")
    @classmethod
    def _known_reduction(cls, value: int) -> int:
        if value not in REDUCTIONS:
            raise ValueError(f"edge reduction must be one of {REDUCTIONS}")
        return value

    @property
    def cell(self) -> str:
        return f"{self.instance_class.value}/r{self.edge_reduction}/d{self.deadline}"

    @property
    def file_name(self) -> str:
        return (
            f"{self.instance_class.value}_r{self.edge_reduction}"
            f"_d{self.deadline}_s{self.seed}.json"
        )

    @classmethod
    def from_file_name(cls, name: str) -> Optional["GenSpec"]:
        """Recover the spec from a generated file name; None for other files."""
        match = FILE_NAME.fullmatch(name)
        if match is None:
            return None
        try:
            return cls(
                instance_class=InstanceClass(match["cls"]),
                edge_reduction=int(match["red"]),
                deadline=int(match["dl"]),
                seed=int(match["seed"]),
            )
        except ValueError:
            return None


FILE_NAME = re.compile(r"(?P<cls>\d+-\d+-\d+)_r(?P<red>\d+)_d(?P<dl>\d+)_s(?P<seed>\d+)\.json")
