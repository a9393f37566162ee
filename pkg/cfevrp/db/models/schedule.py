"""Schedule model: what every vehicle does over the horizon."""

from pydantic import BaseModel, Field


class MoveEvent(BaseModel):
    """Vehicle leaves ``source`` for ``target`` at ``time``."""

    time: int
    source: str
    target: str


class ServiceEvent(BaseModel):
    """Vehicle serves task ``task`` of job ``job`` at ``time``."""

    job: str
    task: str
    time: int


class VehicleTimeline(BaseModel):
    """Location, moves, services and charge of one vehicle."""

    locations: dict[int, str] = Field(
        default_factory=dict, description="Partial map time -> node"
    )
    moves: list[MoveEvent] = Field(default_factory=list)
    services: list[ServiceEvent] = Field(default_factory=list)
    charge: dict[int, int] = Field(
        default_factory=dict, description="Remaining charge per time"
    )

    def moves_at(self, time: int) -> list[MoveEvent]:
        return [move for move in self.moves if move.time == time]


class Schedule(BaseModel):
    """Per-vehicle timelines plus the travelled distance."""

    deadline: int
    horizon: int
    vehicles: dict[str, VehicleTimeline]
    total_cost: int = 0

    def services_of(self, job_id: str) -> list[tuple[str, ServiceEvent]]:
        """All ``(vehicle, event)`` pairs serving a task of ``job_id``."""
        return [
            (vehicle_id, event)
            for vehicle_id, timeline in self.vehicles.items()
            for event in timeline.services
            if event.job == job_id
        ]
