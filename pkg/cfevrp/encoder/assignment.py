"""Job and task assignment: families 1-8 plus job covering and channeling."""

from cfevrp.db.models.instance import Instance
from cfevrp.encoder.layout import VariableLayout
from cfevrp.encoder.model import Assertion
from cfevrp.encoder.terms import and_, implies, not_, or_


def encode_assignment(instance: Instance, layout: VariableLayout) -> list[Assertion]:
    """
    Assignment of vehicles to jobs and tasks and the timing of services.

    :param instance: validated instance.
    :param layout: symbol table built for ``instance``.
    :return: assertions of families 1-8, ``cover`` and ``channel``.
    """
    out: list[Assertion] = []
    vehicles = instance.vehicle_ids
    times = layout.times

    # 1: serving a task means being at its location
    for job in instance.jobs:
        for task in job.tasks:
            for vehicle in vehicles:
                for t in times:
                    out.append(
                        Assertion(
                            "1",
                            implies(
                                layout.z(vehicle, job.id, task.id, t),
                                layout.at(vehicle, task.location, t),
                            ),
                        )
                    )

    # 2: one vehicle per job
    for job in instance.jobs:
        for vehicle in vehicles:
            others = and_(
                not_(layout.x(other, job.id)) for other in vehicles if other != vehicle
            )
            out.append(Assertion("2", implies(layout.x(vehicle, job.id), others)))

    # 3: one vehicle per task
    for job in instance.jobs:
        for task in job.tasks:
            for vehicle in vehicles:
                others = and_(
                    not_(layout.y(other, job.id, task.id))
                    for other in vehicles
                    if other != vehicle
                )
                out.append(
                    Assertion("3", implies(layout.y(vehicle, job.id, task.id), others))
                )

    # 4: an assigned task is served at some time
    for job in instance.jobs:
        for task in job.tasks:
            for vehicle in vehicles:
                served = or_(layout.z(vehicle, job.id, task.id, t) for t in times)
                out.append(
                    Assertion("4", implies(layout.y(vehicle, job.id, task.id), served))
                )

    # 5: no predecessor is served at or after its successor
    for job in instance.jobs:
        for task in job.tasks:
            if not task.predecessors:
                continue
            for vehicle in vehicles:
                for t in times:
                    later = and_(
                        not_(layout.z(vehicle, job.id, pred, later_t))
                        for pred in task.predecessors
                        for later_t in range(t, layout.horizon + 1)
                    )
                    out.append(
                        Assertion(
                            "5", implies(layout.z(vehicle, job.id, task.id, t), later)
                        )
                    )

    # 6: the job's vehicle executes all its tasks
    for job in instance.jobs:
        for vehicle in vehicles:
            tasks = and_(layout.y(vehicle, job.id, task.id) for task in job.tasks)
            out.append(Assertion("6", implies(layout.x(vehicle, job.id), tasks)))

    # 7: service inside the time window
    for job in instance.jobs:
        for task in job.tasks:
            for vehicle in vehicles:
                window = or_(
                    layout.z(vehicle, job.id, task.id, t)
                    for t in range(task.tw_lower, task.tw_upper + 1)
                )
                out.append(
                    Assertion("7", implies(layout.y(vehicle, job.id, task.id), window))
                )

    # 8: only eligible vehicles
    for job in instance.jobs:
        for vehicle in vehicles:
            if vehicle not in job.eligible_vehicles:
                out.append(Assertion("8", not_(layout.x(vehicle, job.id))))

    for job in instance.jobs:
        out.append(
            Assertion("cover", or_(layout.x(vehicle, job.id) for vehicle in job.eligible))
        )

    for job in instance.jobs:
        for task in job.tasks:
            for vehicle in vehicles:
                out.append(
                    Assertion(
                        "channel",
                        implies(
                            layout.y(vehicle, job.id, task.id), layout.x(vehicle, job.id)
                        ),
                    )
                )

    return out
