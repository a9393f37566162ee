"""
Independent schedule checker.

Every requirement is re-checked directly on the schedule's location
entries, move events, services and charge values; nothing is taken from
the encoder. A departure at ``t > T - d`` releases the vehicle: its later
location entries are not tied to the traversal.
"""

import logging
from collections import defaultdict
from typing import Optional

from cfevrp.db.models.instance import Instance
from cfevrp.db.models.report import FAMILIES, FamilyResult, ValidationReport, Witness
from cfevrp.db.models.schedule import MoveEvent, Schedule, VehicleTimeline
from cfevrp.validation.decode import schedule_cost

logger = logging.getLogger(__name__)

CAPACITY_FAMILIES = frozenset({"19", "20"})


class _Report:
    def __init__(self, suppressed: frozenset[str] = frozenset()) -> None:
        self.families = {family: FamilyResult() for family in FAMILIES}
        self.warnings: list[str] = []
        # violations of these families are reported as warnings
        self.suppressed = suppressed

    def fail(
        self,
        family: str,
        message: str,
        vehicle: Optional[str] = None,
        node: Optional[str] = None,
        task: Optional[str] = None,
        time: Optional[int] = None,
    ) -> None:
        if family in self.suppressed:
            where = " ".join(
                f"{key}={value}"
                for key, value in (("vehicle", vehicle), ("node", node), ("time", time))
                if value is not None
            )
            self.warnings.append(f"family {family} (not enforced): {message} {where}".rstrip())
            return
        if not self.families[family].passed:
            return
        self.families[family] = FamilyResult(
            passed=False,
            message=message,
            witness=Witness(vehicle=vehicle, node=node, task=task, time=time),
        )


def _check_positions(
    report: _Report, instance: Instance, vehicle: str, timeline: VehicleTimeline
) -> dict[int, MoveEvent]:
    horizon = instance.horizon
    start = instance.vehicle(vehicle).start_node if vehicle in instance.vehicle_ids else None
    nodes = set(instance.nodes)
    graph = instance.graph
    locations = timeline.locations

    for t, node in locations.items():
        if not 0 <= t <= horizon or node not in nodes:
            report.fail("11", "location entry outside the graph or horizon", vehicle, node, time=t)

    if start is None:
        report.fail("9", "vehicle not in instance", vehicle)
    else:
        if locations.get(0) != start:
            report.fail("9", "not at its depot at time 0", vehicle, start, time=0)
        if locations.get(instance.deadline) != start:
            report.fail(
                "10", "not at its depot at the deadline", vehicle, start, time=instance.deadline
            )

    by_time: dict[int, MoveEvent] = {}
    for move in timeline.moves:
        if not 0 <= move.time < horizon:
            report.fail("13", "move outside 0..T-1", vehicle, move.target, time=move.time)
            continue
        if move.time in by_time:
            report.fail("13", "two moves at once", vehicle, move.target, time=move.time)
            continue
        by_time[move.time] = move

    for t, move in sorted(by_time.items()):
        if move.target == move.source:
            report.fail("14", "move to the node it is at", vehicle, move.target, time=t)
        if locations.get(t) != move.source or (move.source, move.target) not in graph.edges:
            report.fail("15", "move not along an edge from its location", vehicle, move.target, time=t)
            continue
        d = graph.edges[(move.source, move.target)].length
        if t + d > horizon:
            continue
        for step in range(t + 1, t + d):
            if step in locations:
                report.fail("17", "at a node while in transit", vehicle, locations[step], time=step)
        if locations.get(t + d) != move.target:
            report.fail("17", "did not arrive after the traversal", vehicle, move.target, time=t + d)

    for t in range(horizon):
        node = locations.get(t)
        if node is not None and t not in by_time and locations.get(t + 1) != node:
            report.fail("16", "left a node without moving", vehicle, node, time=t + 1)

    return by_time


def _check_charge(
    report: _Report,
    instance: Instance,
    vehicle: str,
    timeline: VehicleTimeline,
    moves: dict[int, MoveEvent],
) -> Optional[tuple[int, int]]:
    horizon = instance.horizon
    battery = instance.battery
    charge = timeline.charge
    edges = instance.graph.edges
    locations = timeline.locations

    for t in charge:
        if not 0 <= t <= horizon:
            report.fail("21", "charge entry outside the horizon", vehicle, time=t)
    for t in range(horizon + 1):
        if t not in charge:
            report.fail("21", "charge missing", vehicle, time=t)
            return None
        if not 0 <= charge[t] <= battery.operating_range:
            report.fail("21", f"charge {charge[t]} outside 0..{battery.operating_range}", vehicle, time=t)
    if charge[0] != battery.operating_range:
        report.fail("21", "does not start fully charged", vehicle, time=0)

    for t, move in moves.items():
        if locations.get(t) != move.source or (move.source, move.target) not in edges:
            continue
        d = edges[(move.source, move.target)].length
        if t + d > horizon:
            continue
        for step in range(t + 1, t + d + 1):
            if charge[step] != charge[step - 1] - battery.discharge_coeff:
                report.fail("22", "wrong discharge while driving", vehicle, move.target, time=step)

    for t in range(horizon):
        node = locations.get(t)
        if node is None or t in moves:
            continue
        if node in battery.charging_stations:
            if charge[t + 1] != charge[t] + battery.charge_coeff:
                report.fail("24", "wrong charge gain at a station", vehicle, node, time=t + 1)
        elif charge[t + 1] != charge[t]:
            report.fail("23", "charge changed while parked", vehicle, node, time=t + 1)

    values = [charge[t] for t in range(horizon + 1)]
    return (min(values), max(values))


def _check_traffic(
    report: _Report,
    instance: Instance,
    schedule: Schedule,
    moves: dict[str, dict[int, MoveEvent]],
) -> None:
    horizon = instance.horizon
    graph = instance.graph

    for t in range(horizon + 1):
        occupants: dict[str, list[str]] = defaultdict(list)
        for vehicle, timeline in schedule.vehicles.items():
            node = timeline.locations.get(t)
            if node is not None:
                occupants[node].append(vehicle)
        for node, present in occupants.items():
            if len(present) > 1 and not graph.is_hub(node):
                report.fail("12", f"{len(present)} vehicles at one node", present[1], node, time=t)

    departures: dict[tuple[int, str, str], list[str]] = defaultdict(list)
    for vehicle, by_time in moves.items():
        for t, move in by_time.items():
            departures[(t, move.source, move.target)].append(vehicle)

    for (t, source, target), leaving in sorted(departures.items()):
        attr = graph.edges.get((source, target))
        if attr is None:
            continue
        g = attr.capacity
        if len(leaving) > g:
            report.fail("19", f"{len(leaving)} vehicles enter one segment", leaving[g], source, time=t)
        d = attr.length
        if t + d > horizon:
            continue
        allowed = g - min(len(leaving), g)
        waiting = [
            vehicle
            for vehicle, timeline in schedule.vehicles.items()
            if timeline.locations.get(t) == target
        ]
        for entry in range(t, t + d + 1):
            oncoming = [
                vehicle
                for vehicle in waiting
                if entry in moves[vehicle] and moves[vehicle][entry].target == source
            ]
            if len(oncoming) > allowed:
                report.fail(
                    "20", "entered a segment against oncoming traffic", oncoming[0], target, time=entry
                )

    # Same-direction overlaps are reported, not failed.
    spans: dict[tuple[str, str], list[tuple[int, int, str]]] = defaultdict(list)
    for (t, source, target), leaving in departures.items():
        attr = graph.edges.get((source, target))
        if attr is not None:
            for vehicle in leaving:
                spans[(source, target)].append((t, t + attr.length, vehicle))
    for (source, target), items in sorted(spans.items()):
        items.sort()
        for (t1, end1, v1), (t2, _, v2) in zip(items, items[1:]):
            if t1 < t2 < end1:
                report.warnings.append(
                    f"vehicles {v1} and {v2} share segment {source}->{target} "
                    f"(departures {t1} and {t2})"
                )


def _check_services(report: _Report, instance: Instance, schedule: Schedule) -> None:
    horizon = instance.horizon
    jobs = {job.id: job for job in instance.jobs}
    served: dict[tuple[str, str], list[tuple[str, int]]] = defaultdict(list)

    for vehicle, timeline in schedule.vehicles.items():
        for event in timeline.services:
            job = jobs.get(event.job)
            if job is None or event.task not in {task.id for task in job.tasks}:
                report.fail("3", "service of an unknown task", vehicle, task=event.task, time=event.time)
                continue
            task = job.task(event.task)
            served[(job.id, task.id)].append((vehicle, event.time))
            if not 0 <= event.time <= horizon:
                report.fail("4", "service outside the horizon", vehicle, task=task.id, time=event.time)
            if timeline.locations.get(event.time) != task.location:
                report.fail("1", "served away from the task location", vehicle, task.location, task.id, event.time)
            if not task.tw_lower <= event.time <= task.tw_upper:
                report.fail("7", "served outside the time window", vehicle, task.location, task.id, event.time)

    for (job_id, task_id), events in served.items():
        if len(events) > 1:
            report.fail("3", "task served more than once", events[1][0], task=task_id, time=events[1][1])

    for job in instance.jobs:
        vehicles = {v for (j, _), events in served.items() if j == job.id for v, _ in events}
        if not vehicles:
            report.fail("cover", f"job {job.id} not served", task=job.delivery.id)
            continue
        if len(vehicles) > 1:
            report.fail("2", f"job {job.id} split over vehicles", sorted(vehicles)[1])
        for vehicle in sorted(vehicles):
            if vehicle not in job.eligible_vehicles:
                report.fail("8", f"vehicle not eligible for job {job.id}", vehicle)
            times = {
                task.id: [t for v, t in served.get((job.id, task.id), []) if v == vehicle]
                for task in job.tasks
            }
            for task in job.tasks:
                if not times[task.id]:
                    report.fail("6", f"job {job.id} not completed", vehicle, task.location, task.id)
                    continue
                for pred in task.predecessors:
                    if not times[pred] or min(times[pred]) >= min(times[task.id]):
                        report.fail(
                            "5", "served before its predecessor", vehicle, task.location, task.id, min(times[task.id])
                        )

    for vehicle, timeline in schedule.vehicles.items():
        by_job: dict[str, list[int]] = defaultdict(list)
        for event in timeline.services:
            by_job[event.job].append(event.time)
        for job_id, times in by_job.items():
            first, last = min(times), max(times)
            for event in timeline.services:
                if event.job != job_id and first < event.time <= last:
                    report.fail(
                        "18", f"served job {event.job} in the middle of job {job_id}",
                        vehicle, task=event.task, time=event.time,
                    )


def validate(
    schedule: Schedule, instance: Instance, include_capacity: bool = True
) -> ValidationReport:
    """
    Re-check a schedule against every requirement of the instance.

    :param schedule: schedule to check.
    :param instance: instance the schedule claims to solve.
    :param include_capacity: false when the schedule was solved without the
        segment capacity families 19-20; their violations become warnings.
    :return: per-family verdicts with the first witness of each failure.
    """
    report = _Report(frozenset() if include_capacity else CAPACITY_FAMILIES)
    moves: dict[str, dict[int, MoveEvent]] = {}
    extrema: dict[str, tuple[int, int]] = {}

    for vehicle in instance.vehicle_ids:
        if vehicle not in schedule.vehicles:
            report.fail("9", "vehicle missing from schedule", vehicle)

    for vehicle, timeline in schedule.vehicles.items():
        moves[vehicle] = _check_positions(report, instance, vehicle, timeline)
        if vehicle in instance.vehicle_ids:
            span = _check_charge(report, instance, vehicle, timeline, moves[vehicle])
            if span is not None:
                extrema[vehicle] = span

    _check_traffic(report, instance, schedule, moves)
    _check_services(report, instance, schedule)

    cost = schedule_cost(instance, schedule)
    if cost != schedule.total_cost:
        report.fail("25", f"travelled distance is {cost}, schedule says {schedule.total_cost}")

    overall = all(result.passed for result in report.families.values())
    if not overall:
        logger.warning(
            "Schedule failed families %s",
            ", ".join(f for f, r in report.families.items() if not r.passed),
        )
    return ValidationReport(
        overall=overall,
        families=report.families,
        warnings=report.warnings,
        cost=cost,
        charge_extrema=extrema,
    )
