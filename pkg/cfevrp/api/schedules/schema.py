from typing import Optional

from pydantic import BaseModel, Field

from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import Schedule
from cfevrp.settings import SolveMode


class SolveRequest(BaseModel):
    instance: Instance
    mode: Optional[SolveMode] = None
    time_limit: Optional[float] = Field(default=None, gt=0)
    include_capacity: bool = True


class ValidateRequest(BaseModel):
    instance: Instance
    schedule: Schedule
    include_capacity: bool = True


class OracleRequest(BaseModel):
    instance: Instance
    optimize: bool = True
