import itertools
import logging
from typing import Iterator, NamedTuple

from cfevrp.db.models.instance import Instance
from cfevrp.db.models.oracle import OracleResult
from cfevrp.db.models.schedule import (
    MoveEvent,
    Schedule,
    ServiceEvent,
    VehicleTimeline,
)
from cfevrp.db.models.solver import SolverStatus
from cfevrp.exceptions import OracleLimitError
from cfevrp.oracle.state import (
    AT,
    FREE,
    Position,
    Watch,
    advance,
    depart,
    next_charge,
    overcrowded,
    traffic_step,
)
from cfevrp.settings import settings

logger = logging.getLogger(__name__)

# Per vehicle: destination of the move started now ("" to stay) and the tasks served now.
Action = tuple[str, tuple[tuple[str, str], ...]]
Step = tuple[Action, ...]


class JointState(NamedTuple):
    """Everything the future depends on at one time step."""

    positions: tuple[Position, ...]
    charges: tuple[int, ...]
    # per job: index of the serving vehicle (-1 if none yet) and the served task ids
    progress: tuple[tuple[int, frozenset[str]], ...]
    watches: tuple[Watch, ...]


def check_limits(instance: Instance) -> None:
    """
    :raises OracleLimitError: when the instance is too large to enumerate.
    """
    limits = (
        ("nodes", len(instance.nodes), settings.oracle_max_nodes),
        ("vehicles", len(instance.vehicles), settings.oracle_max_vehicles),
        ("horizon", instance.horizon, settings.oracle_max_horizon),
    )
    for name, value, limit in limits:
        if value > limit:
            raise OracleLimitError(f"{name} {value} exceeds oracle limit {limit}")


def _open_jobs(instance: Instance, progress, vehicle: int) -> list[int]:
    return [
        j
        for j, (owner, served) in enumerate(progress)
        if owner == vehicle and served and len(served) < len(instance.jobs[j].tasks)
    ]


def _service_options(
    instance: Instance, state: JointState, vehicle: int, t: int
) -> list[tuple[tuple[str, str], ...]]:
    position = state.positions[vehicle]
    if position.kind != AT:
        return [()]
    open_jobs = _open_jobs(instance, state.progress, vehicle)
    if len(open_jobs) > 1:
        return [()]
    vehicle_id = instance.vehicles[vehicle].id

    due = []
    for j, job in enumerate(instance.jobs):
        owner, served = state.progress[j]
        if owner not in (-1, vehicle) or vehicle_id not in job.eligible_vehicles:
            continue
        if open_jobs and j not in open_jobs:
            continue
        for task in job.tasks:
            if (
                task.id not in served
                and task.location == position.node
                and task.tw_lower <= t <= task.tw_upper
                and set(task.predecessors) <= served
            ):
                due.append((job.id, task.id))

    return [
        subset for size in range(len(due) + 1) for subset in itertools.combinations(due, size)
    ]


def _serve(instance: Instance, progress, step: Step):
    updated = list(progress)
    index = {job.id: j for j, job in enumerate(instance.jobs)}
    for vehicle, (_, services) in enumerate(step):
        for job_id, task_id in services:
            j = index[job_id]
            owner, served = updated[j]
            if owner not in (-1, vehicle):
                return None
            updated[j] = (vehicle, served | {task_id})
    return tuple(updated)


def _admissible(instance: Instance, state: JointState, t: int) -> bool:
    if overcrowded(instance, state.positions) is not None:
        return False
    if t == instance.deadline:
        for vehicle, position in zip(instance.vehicles, state.positions):
            if position != Position(AT, vehicle.start_node):
                return False
    for job, (_, served) in zip(instance.jobs, state.progress):
        for task in job.tasks:
            if task.id not in served and task.tw_upper < t:
                return False
    return True


def _complete(instance: Instance, state: JointState) -> bool:
    return all(
        len(served) == len(job.tasks) for job, (_, served) in zip(instance.jobs, state.progress)
    )


class Transition(NamedTuple):
    """One step of a trajectory: the actions taken and the state they lead to."""

    step: Step
    positions: tuple[Position, ...]
    charges: tuple[int, ...]


def _reentries(instance: Instance) -> list[tuple[Position, int]]:
    """
    Where a released vehicle may be at the next step.

    It either stays unplaced or shows up at any node with any charge in
    range. An unplaced vehicle carries charge 0 as a placeholder.
    """
    operating_range = instance.battery.operating_range
    return [(Position(FREE), 0)] + [
        (Position(AT, node), charge)
        for node in instance.nodes
        for charge in range(operating_range + 1)
    ]


def _expand(
    instance: Instance, state: JointState, t: int
) -> Iterator[tuple[Step, JointState, int]]:
    horizon = instance.horizon
    graph = instance.graph
    operating_range = instance.battery.operating_range
    released = _reentries(instance)

    options = []
    for vehicle, position in enumerate(state.positions):
        targets = [""]
        if position.kind == AT and t < horizon:
            targets.extend(sorted(graph.adjacency[position.node]))
        services = _service_options(instance, state, vehicle, t)
        options.append([(target, subset) for target in targets for subset in services])

    for step in itertools.product(*options):
        progress = _serve(instance, state.progress, step)
        if progress is None:
            continue
        if any(len(_open_jobs(instance, progress, v)) > 1 for v in range(len(step))):
            continue
        if t == horizon:
            yield step, state._replace(progress=progress), 0
            continue

        moves = {
            vehicle: (state.positions[vehicle].node, target)
            for vehicle, (target, _) in enumerate(step)
            if target
        }
        violation, watches = traffic_step(instance, t, state.positions, moves, state.watches)
        if violation is not None:
            continue

        choices, cost = [], 0
        for vehicle, (target, _) in enumerate(step):
            position = state.positions[vehicle]
            if target:
                following = depart(instance, position.node, target, t)
                cost += graph.edges[(position.node, target)].length
            else:
                following = advance(position, t)
            if following.kind == FREE:
                choices.append(released)
                continue
            rc = next_charge(instance, position, target or None, state.charges[vehicle], t)
            if rc is None or not 0 <= rc <= operating_range:
                break
            choices.append([(following, rc)])
        else:
            for placed in itertools.product(*choices):
                successor = JointState(
                    tuple(p for p, _ in placed), tuple(c for _, c in placed), progress, watches
                )
                if _admissible(instance, successor, t + 1):
                    yield step, successor, cost


def witness_schedule(
    instance: Instance, path: tuple[Transition, ...], cost: int
) -> Schedule:
    """Turn a sequence of transitions into a schedule."""
    positions = tuple(Position(AT, vehicle.start_node) for vehicle in instance.vehicles)
    charges = (instance.battery.operating_range,) * len(instance.vehicles)
    timelines = [VehicleTimeline() for _ in instance.vehicles]

    for t, transition in enumerate(path):
        for vehicle, (target, services) in enumerate(transition.step):
            position = positions[vehicle]
            timeline = timelines[vehicle]
            if position.kind == AT:
                timeline.locations[t] = position.node
            timeline.charge[t] = charges[vehicle]
            timeline.services.extend(
                ServiceEvent(job=job_id, task=task_id, time=t) for job_id, task_id in services
            )
            if target:
                timeline.moves.append(MoveEvent(time=t, source=position.node, target=target))
        positions, charges = transition.positions, transition.charges

    return Schedule(
        deadline=instance.deadline,
        horizon=instance.horizon,
        vehicles={v.id: timeline for v, timeline in zip(instance.vehicles, timelines)},
        total_cost=cost,
    )


def oracle_solve(instance: Instance, optimize: bool = True) -> OracleResult:
    """
    Exhaustive search over joint vehicle trajectories.

    A layered search over time keeps, for every distinct joint state, the
    best partial trajectory: lowest cost first when optimizing, then the
    lexicographically smallest action sequence. A departure that cannot
    complete within the horizon releases the vehicle; it may show up again
    at any node with any charge, as the validator and replay allow.

    :param instance: instance within the oracle limits.
    :param optimize: minimize travelled distance; otherwise return the
        lexicographically first feasible trajectory.
    :return: sat with cost and witness schedule, or unsat.
    :raises OracleLimitError: when the instance exceeds the limits.
    """
    check_limits(instance)

    def rank(value: tuple[int, tuple[Transition, ...]]):
        return value if optimize else value[1]

    start = JointState(
        positions=tuple(Position(AT, v.start_node) for v in instance.vehicles),
        charges=(instance.battery.operating_range,) * len(instance.vehicles),
        progress=tuple((-1, frozenset()) for _ in instance.jobs),
        watches=(),
    )
    layer: dict[JointState, tuple[int, tuple[Transition, ...]]] = {}
    if _admissible(instance, start, 0):
        layer[start] = (0, ())
    explored = len(layer)

    for t in range(instance.horizon + 1):
        following: dict[JointState, tuple[int, tuple[Transition, ...]]] = {}
        for state, (cost, path) in layer.items():
            for step, successor, step_cost in _expand(instance, state, t):
                transition = Transition(step, successor.positions, successor.charges)
                value = (cost + step_cost, path + (transition,))
                best = following.get(successor)
                if best is None or rank(value) < rank(best):
                    following[successor] = value
        layer = following
        explored += len(layer)
        if not layer:
            break

    finals = [value for state, value in layer.items() if _complete(instance, state)]
    logger.info("Oracle explored %d states", explored)
    if not finals:
        return OracleResult(status=SolverStatus.UNSAT, states=explored)

    cost, path = min(finals, key=rank)
    return OracleResult(
        status=SolverStatus.SAT,
        cost=cost,
        optimal=optimize,
        schedule=witness_schedule(instance, path, cost),
        states=explored,
    )
