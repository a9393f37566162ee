from pydantic import BaseModel, Field

from cfevrp.db.models.instance import Instance


class EncodeRequest(BaseModel):
    instance: Instance
    include_capacity: bool = True


class EncodeStats(BaseModel):
    """Size of an encoding."""

    declarations: int
    assertions: int
    families: dict[str, int] = Field(default_factory=dict)
