from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import (
    MoveEvent,
    Schedule,
    ServiceEvent,
    VehicleTimeline,
)
from cfevrp.db.models.solver import SolverModel
from cfevrp.encoder.layout import VariableLayout
from cfevrp.exceptions import DecodeError


def schedule_cost(instance: Instance, schedule: Schedule) -> int:
    """Summed length of every move event along an existing edge."""
    edges = instance.graph.edges
    return sum(
        edges[(move.source, move.target)].length
        for timeline in schedule.vehicles.values()
        for move in timeline.moves
        if (move.source, move.target) in edges
    )


def decode(model: SolverModel, layout: VariableLayout, instance: Instance) -> Schedule:
    """
    Rebuild a schedule from a satisfying assignment.

    Locations come from true ``at`` variables, moves from ``at & move``
    pairs before the horizon, services from the earliest true ``z`` inside
    the window of every task whose ``y`` is true.

    :param model: values read back from the solver.
    :param layout: symbol table of the encoding the model answers.
    :param instance: the encoded instance.
    :return: schedule with the recomputed travelled distance.
    :raises DecodeError: on a vehicle at two nodes, two moves at once or a
        missing charge value.
    """
    horizon = layout.horizon
    vehicles: dict[str, VehicleTimeline] = {}

    for vehicle in instance.vehicle_ids:
        locations: dict[int, str] = {}
        moves: list[MoveEvent] = []
        charge: dict[int, int] = {}
        for t in range(horizon + 1):
            here = [
                node for node in instance.nodes if model.is_true(layout.at(vehicle, node, t))
            ]
            if len(here) > 1:
                raise DecodeError(
                    "11", f"vehicle {vehicle} at {', '.join(here)} at time {t}"
                )
            if here:
                locations[t] = here[0]
                if t < horizon:
                    targets = [
                        node
                        for node in instance.nodes
                        if model.is_true(layout.move(vehicle, node, t))
                    ]
                    if len(targets) > 1:
                        raise DecodeError(
                            "13",
                            f"vehicle {vehicle} moves to {', '.join(targets)} at time {t}",
                        )
                    if targets:
                        moves.append(MoveEvent(time=t, source=here[0], target=targets[0]))

            name = layout.rc(vehicle, t)
            if name not in model.integers:
                raise DecodeError("21", f"no value for {name}")
            charge[t] = model.integers[name]

        services = []
        for job in instance.jobs:
            for task in job.tasks:
                if not model.is_true(layout.y(vehicle, job.id, task.id)):
                    continue
                for t in range(task.tw_lower, task.tw_upper + 1):
                    if model.is_true(layout.z(vehicle, job.id, task.id, t)):
                        services.append(ServiceEvent(job=job.id, task=task.id, time=t))
                        break
        services.sort(key=lambda event: (event.time, event.job, event.task))

        vehicles[vehicle] = VehicleTimeline(
            locations=locations, moves=moves, services=services, charge=charge
        )

    schedule = Schedule(
        deadline=instance.deadline, horizon=horizon, vehicles=vehicles
    )
    return schedule.model_copy(update={"total_cost": schedule_cost(instance, schedule)})
