import logging
from collections import defaultdict
from typing import Optional

from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import Schedule
from cfevrp.oracle.state import (
    AT,
    FREE,
    TRANSIT,
    Position,
    Watch,
    advance,
    depart,
    next_charge,
    overcrowded,
    traffic_step,
)

logger = logging.getLogger(__name__)


def _structure(schedule: Schedule, instance: Instance) -> Optional[str]:
    horizon = instance.horizon
    nodes = set(instance.nodes)
    if set(schedule.vehicles) != set(instance.vehicle_ids):
        return "vehicle set differs from the instance"

    served: set[tuple[str, str]] = set()
    for vehicle, timeline in schedule.vehicles.items():
        for t, node in timeline.locations.items():
            if not 0 <= t <= horizon or node not in nodes:
                return f"{vehicle}: bad location entry {t}:{node}"
        times = [move.time for move in timeline.moves]
        if len(set(times)) != len(times) or any(not 0 <= t < horizon for t in times):
            return f"{vehicle}: bad move times"
        if set(timeline.charge) != set(range(horizon + 1)):
            return f"{vehicle}: charge not given for exactly 0..T"
        for event in timeline.services:
            try:
                instance.job(event.job).task(event.task)
            except KeyError:
                return f"{vehicle}: unknown task {event.job}/{event.task}"
            if not 0 <= event.time <= horizon:
                return f"{vehicle}: service outside the horizon"
            if (event.job, event.task) in served:
                return f"task {event.job}/{event.task} served twice"
            served.add((event.job, event.task))
    return None


def replay_schedule(schedule: Schedule, instance: Instance) -> Optional[str]:
    """
    Drive the schedule's events through the step rules.

    :return: reason of the first rejection, or None when feasible.
    """
    reason = _structure(schedule, instance)
    if reason is not None:
        return reason

    horizon = instance.horizon
    battery = instance.battery
    edges = instance.graph.edges
    vehicles = instance.vehicles
    timelines = [schedule.vehicles[v.id] for v in vehicles]
    moves = [{move.time: move for move in tl.moves} for tl in timelines]
    services = [defaultdict(list) for _ in vehicles]
    for idx, tl in enumerate(timelines):
        for event in tl.services:
            services[idx][event.time].append(event)

    positions = [Position(AT, v.start_node) for v in vehicles]
    owner: dict[str, int] = {}
    done: dict[tuple[str, str], int] = {}
    watches: tuple[Watch, ...] = ()
    cost = 0

    for idx, tl in enumerate(timelines):
        if tl.charge[0] != battery.operating_range:
            return f"{vehicles[idx].id}: not fully charged at 0"

    for t in range(horizon + 1):
        for idx, tl in enumerate(timelines):
            position = positions[idx]
            entry = tl.locations.get(t)
            if position.kind == FREE:
                if entry is not None:
                    positions[idx] = Position(AT, entry)
            elif position.kind == TRANSIT:
                if entry is not None:
                    return f"{vehicles[idx].id}: at {entry} while in transit at {t}"
            elif entry != position.node:
                return f"{vehicles[idx].id}: expected at {position.node} at {t}"
            if t == instance.deadline and positions[idx] != Position(AT, vehicles[idx].start_node):
                return f"{vehicles[idx].id}: not at its depot at the deadline"
            if not 0 <= tl.charge[t] <= battery.operating_range:
                return f"{vehicles[idx].id}: charge out of range at {t}"

        node = overcrowded(instance, tuple(positions))
        if node is not None:
            return f"node {node} overcrowded at {t}"

        for idx, vehicle in enumerate(vehicles):
            open_jobs = {
                job.id
                for job in instance.jobs
                if owner.get(job.id) == idx
                and any(done.get((job.id, task.id), t) < t for task in job.tasks)
                and not all(done.get((job.id, task.id), t) < t for task in job.tasks)
            }
            for event in services[idx][t]:
                job = instance.job(event.job)
                task = job.task(event.task)
                if positions[idx] != Position(AT, task.location):
                    return f"{vehicle.id}: serves {task.id} away from {task.location}"
                if not task.tw_lower <= t <= task.tw_upper:
                    return f"{vehicle.id}: serves {task.id} outside its window"
                if vehicle.id not in job.eligible_vehicles:
                    return f"{vehicle.id}: not eligible for job {job.id}"
                if owner.setdefault(job.id, idx) != idx:
                    return f"job {job.id} split over vehicles"
                for pred in task.predecessors:
                    if done.get((job.id, pred), t) >= t:
                        return f"{vehicle.id}: {task.id} before its predecessor {pred}"
                if open_jobs - {job.id}:
                    return f"{vehicle.id}: serves job {job.id} inside another job"
            for event in services[idx][t]:
                done[(event.job, event.task)] = t

        if t == horizon:
            break

        started: dict[int, tuple[str, str]] = {}
        for idx, vehicle in enumerate(vehicles):
            move = moves[idx].get(t)
            if move is None:
                continue
            position = positions[idx]
            if position.kind != AT or position.node != move.source:
                return f"{vehicle.id}: move from {move.source} while not there at {t}"
            if (move.source, move.target) not in edges:
                return f"{vehicle.id}: no segment {move.source}->{move.target}"
            started[idx] = (move.source, move.target)

        violation, watches = traffic_step(instance, t, tuple(positions), started, watches)
        if violation is not None:
            return violation

        for idx, tl in enumerate(timelines):
            target = started[idx][1] if idx in started else None
            expected = next_charge(instance, positions[idx], target, tl.charge[t], t)
            if expected is not None and tl.charge[t + 1] != expected:
                return f"{vehicles[idx].id}: charge {tl.charge[t + 1]} at {t + 1}, expected {expected}"
            if target is not None:
                cost += edges[started[idx]].length
                positions[idx] = depart(instance, positions[idx].node, target, t)
            else:
                positions[idx] = advance(positions[idx], t)

    for job in instance.jobs:
        if any((job.id, task.id) not in done for task in job.tasks):
            return f"job {job.id} not completed"
    if cost != schedule.total_cost:
        return f"travelled distance {cost} differs from {schedule.total_cost}"
    return None


def oracle_check_schedule(schedule: Schedule, instance: Instance) -> bool:
    """Feasibility of a schedule under the oracle's transition rules."""
    reason = replay_schedule(schedule, instance)
    if reason is not None:
        logger.debug("Replay rejected schedule: %s", reason)
    return reason is None
