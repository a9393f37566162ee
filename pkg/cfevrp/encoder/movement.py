"""Vehicle movement over the time-expanded graph: families 9-18."""

from cfevrp.db.models.instance import Instance
from cfevrp.encoder.layout import VariableLayout
from cfevrp.encoder.model import Assertion
from cfevrp.encoder.terms import TRUE, and_, implies, not_


def _amo(layout: VariableLayout, family: str, names: list[str]) -> list[Assertion]:
    term = and_(layout.cardinality.amo(names))
    if term == TRUE:
        return []
    return [Assertion(family, term)]


def encode_movement(instance: Instance, layout: VariableLayout) -> list[Assertion]:
    """
    Depots, positions, moves, transit and job sequencing.

    Edge transit (family 17) is only emitted for departures at ``t <= T - d``;
    the horizon extension by the longest edge keeps every departure up to
    the deadline covered.

    :param instance: validated instance.
    :param layout: symbol table built for ``instance``.
    :return: assertions of families 9-18.
    """
    out: list[Assertion] = []
    vehicles = instance.vehicles
    nodes = instance.nodes
    graph = instance.graph
    horizon = layout.horizon
    times = layout.times

    for vehicle in vehicles:
        out.append(Assertion("9", layout.at(vehicle.id, vehicle.start_node, 0)))
    for vehicle in vehicles:
        out.append(
            Assertion("10", layout.at(vehicle.id, vehicle.start_node, instance.deadline))
        )

    for vehicle in vehicles:
        for t in times:
            out.extend(
                _amo(layout, "11", [layout.at(vehicle.id, node, t) for node in nodes])
            )

    vehicle_ids = instance.vehicle_ids
    for node in nodes:
        if graph.is_hub(node):
            continue
        for t in times:
            out.extend(
                _amo(layout, "12", [layout.at(vid, node, t) for vid in vehicle_ids])
            )

    for vehicle in vehicle_ids:
        for t in times:
            out.extend(
                _amo(layout, "13", [layout.move(vehicle, node, t) for node in nodes])
            )

    for vehicle in vehicle_ids:
        for node in nodes:
            for t in times:
                out.append(
                    Assertion(
                        "14",
                        implies(
                            layout.at(vehicle, node, t),
                            not_(layout.move(vehicle, node, t)),
                        ),
                    )
                )

    for vehicle in vehicle_ids:
        for node in nodes:
            successors = graph.adjacency[node]
            for t in times:
                forbidden = and_(
                    not_(layout.move(vehicle, other, t))
                    for other in nodes
                    if other not in successors
                )
                out.append(
                    Assertion("15", implies(layout.at(vehicle, node, t), forbidden))
                )

    for vehicle in vehicle_ids:
        for node in nodes:
            for t in range(horizon):
                stays = and_([layout.at(vehicle, node, t), layout.idle(vehicle, t)])
                out.append(
                    Assertion("16", implies(stays, layout.at(vehicle, node, t + 1)))
                )

    for vehicle in vehicle_ids:
        for (source, target), attr in graph.edges.items():
            d = attr.length
            for t in range(horizon - d + 1):
                departs = and_(
                    [layout.at(vehicle, source, t), layout.move(vehicle, target, t)]
                )
                transit = [
                    not_(layout.at(vehicle, other, step))
                    for step in range(t + 1, t + d)
                    for other in nodes
                ]
                transit.append(layout.at(vehicle, target, t + d))
                out.append(Assertion("17", implies(departs, and_(transit))))

    # 18: between two tasks of one job the vehicle serves no other job
    for vehicle in vehicle_ids:
        for job in instance.jobs:
            for first in job.tasks:
                for second in job.tasks:
                    if first.id == second.id:
                        continue
                    for t1 in times:
                        for t2 in range(t1, horizon + 1):
                            both = and_(
                                [
                                    layout.z(vehicle, job.id, first.id, t1),
                                    layout.z(vehicle, job.id, second.id, t2),
                                ]
                            )
                            gap = and_(
                                not_(layout.other_job_served(vehicle, job.id, step))
                                for step in range(t1 + 1, t2 + 1)
                            )
                            out.append(Assertion("18", implies(both, gap)))

    return out
