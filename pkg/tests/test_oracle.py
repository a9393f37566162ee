import numpy as np
import pytest

from cfevrp.backend.config import SolverConfig
from cfevrp.backend.driver import run_solver
from cfevrp.backend.emit import emit_smtlib
from cfevrp.backend.optimize import optimize_by_bound_search
from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import MoveEvent, Schedule, ServiceEvent
from cfevrp.db.models.solver import SolverStatus
from cfevrp.encoder.encode import encode
from cfevrp.exceptions import OracleLimitError
from cfevrp.oracle.replay import oracle_check_schedule, replay_schedule
from cfevrp.oracle.search import oracle_solve
from cfevrp.settings import SolveMode
from cfevrp.validation.decode import decode
from cfevrp.validation.validate import validate
from tests.conftest import line_instance


def test_line_optimum(line: Instance) -> None:
    result = oracle_solve(line)
    assert result.status == SolverStatus.SAT
    assert result.cost == 2
    assert result.optimal
    assert result.schedule is not None
    assert result.schedule.total_cost == 2


def test_witness_passes_validation_and_replay(line: Instance, swap: Instance) -> None:
    for instance in (line, swap):
        result = oracle_solve(instance)
        assert validate(result.schedule, instance).overall
        assert replay_schedule(result.schedule, instance) is None


def test_unreachable_window_is_unsat() -> None:
    jobs = [
        {
            "id": "1",
            "eligible": ["a"],
            "tasks": [
                {"id": "pickup", "location": "B", "tw": [0, 5]},
                {"id": "delivery", "location": "A", "predecessors": ["pickup"], "tw": [0, 1]},
            ],
        }
    ]
    result = oracle_solve(line_instance(jobs))
    assert result.status == SolverStatus.UNSAT
    assert result.schedule is None
    assert result.cost is None


def test_no_jobs_costs_nothing() -> None:
    result = oracle_solve(line_instance(jobs=[]))
    assert result.status == SolverStatus.SAT
    assert result.cost == 0


def test_empty_battery_is_unsat() -> None:
    assert oracle_solve(line_instance(operating_range=0)).status == SolverStatus.UNSAT


def test_charging_makes_room() -> None:
    # one unit of range: the way back needs a step parked at the charger on B
    result = oracle_solve(line_instance(operating_range=1))
    assert result.status == SolverStatus.SAT
    assert result.cost == 2
    timeline = result.schedule.vehicles["a"]
    assert len(timeline.moves) == 2
    assert any(timeline.charge[t + 1] > timeline.charge[t] for t in range(5))
    assert set(timeline.charge.values()) == {0, 1}


def test_two_vehicles_share_a_hub(swap: Instance) -> None:
    result = oracle_solve(swap)
    assert result.status == SolverStatus.SAT
    assert result.cost == 4


def test_two_vehicles_without_hub(swap: Instance) -> None:
    narrow = Instance.model_validate(swap.model_dump(by_alias=True) | {"hubs": []})
    result = oracle_solve(narrow)
    assert result.status == SolverStatus.SAT
    assert result.cost == 4
    locations = [
        {t: tl.locations.get(t) for t in range(narrow.horizon + 1)}
        for tl in result.schedule.vehicles.values()
    ]
    first, second = locations
    assert all(first[t] is None or first[t] != second[t] for t in first)


def late_reentry_instance() -> Instance:
    """
    A <-> C of length 3, deadline 2, horizon 5.

    The vehicle must be home at 2, so the window [3, 4] at C is only met by
    leaving at 3 past the horizon and showing up again at C.
    """
    return Instance.model_validate(
        {
            "nodes": ["A", "C"],
            "edges": [
                {"from": "A", "to": "C", "length": 3},
                {"from": "C", "to": "A", "length": 3},
            ],
            "vehicles": [{"id": "a", "start": "A"}],
            "jobs": [
                {
                    "id": "1",
                    "eligible": ["a"],
                    "tasks": [{"id": "p", "location": "C", "tw": [3, 4]}],
                }
            ],
            "battery": {"operating_range": 6, "charge": 1, "discharge": 1, "stations": []},
            "deadline": 2,
        }
    )


def test_released_vehicle_reenters() -> None:
    instance = late_reentry_instance()
    result = oracle_solve(instance)
    assert result.status == SolverStatus.SAT
    assert result.cost == 3
    timeline = result.schedule.vehicles["a"]
    assert timeline.moves == [MoveEvent(time=3, source="A", target="C")]
    assert timeline.services == [ServiceEvent(job="1", task="p", time=4)]
    assert timeline.locations[4] == "C"
    assert validate(result.schedule, instance).overall
    assert replay_schedule(result.schedule, instance) is None


@pytest.mark.anyio
async def test_released_vehicle_reenters_in_smt(solver_config: SolverConfig) -> None:
    instance = late_reentry_instance()
    encoded = encode(instance)
    outcome = await run_solver(emit_smtlib(encoded), solver_config)
    assert outcome.status == SolverStatus.SAT
    schedule = decode(outcome.model, encoded.layout, instance)
    assert validate(schedule, instance).overall


def test_decision_mode_is_not_optimal(line: Instance) -> None:
    result = oracle_solve(line, optimize=False)
    assert result.status == SolverStatus.SAT
    assert not result.optimal


def test_limits(fig1: Instance) -> None:
    with pytest.raises(OracleLimitError):
        oracle_solve(fig1)


def _mutate(schedule: Schedule, instance: Instance, random: np.random.Generator) -> Schedule:
    vehicles = {vid: tl.model_copy(deep=True) for vid, tl in schedule.vehicles.items()}
    vid = sorted(vehicles)[int(random.integers(len(vehicles)))]
    timeline = vehicles[vid]
    horizon = instance.horizon
    nodes = instance.nodes
    total_cost = schedule.total_cost
    kind = int(random.integers(8))
    t = int(random.integers(horizon + 1))
    if kind == 0:
        timeline.locations[t] = nodes[int(random.integers(len(nodes)))]
    elif kind == 1:
        timeline.locations.pop(t, None)
    elif kind == 2:
        timeline.charge[t] += int(random.choice([-1, 1]))
    elif kind == 3 and timeline.services:
        idx = int(random.integers(len(timeline.services)))
        event = timeline.services[idx]
        shifted = min(max(event.time + int(random.choice([-1, 1])), 0), horizon)
        timeline.services[idx] = event.model_copy(update={"time": shifted})
    elif kind == 4 and timeline.moves:
        timeline.moves.pop(int(random.integers(len(timeline.moves))))
    elif kind == 5 and t < horizon:
        source = timeline.locations.get(t, nodes[0])
        target = nodes[int(random.integers(len(nodes)))]
        timeline.moves.append(MoveEvent(time=t, source=source, target=target))
    elif kind == 6:
        total_cost += int(random.choice([-1, 1]))
    elif kind == 7 and timeline.services:
        event = timeline.services.pop(int(random.integers(len(timeline.services))))
        other = sorted(vehicles)[int(random.integers(len(vehicles)))]
        vehicles[other].services.append(
            ServiceEvent(job=event.job, task=event.task, time=event.time)
        )
    return schedule.model_copy(update={"vehicles": vehicles, "total_cost": total_cost})


def test_validator_agrees_with_replay(line: Instance, swap: Instance, line_schedule: Schedule) -> None:
    random = np.random.default_rng(20240601)
    seeds = [
        (line, line_schedule),
        (swap, oracle_solve(swap).schedule),
    ]
    checked = 0
    rejected = 0
    for instance, base in seeds:
        for _ in range(600):
            schedule = base
            for _ in range(int(random.integers(1, 4))):
                schedule = _mutate(schedule, instance, random)
            verdict = validate(schedule, instance).overall
            assert verdict == oracle_check_schedule(schedule, instance), (
                replay_schedule(schedule, instance),
                validate(schedule, instance).render(),
            )
            checked += 1
            rejected += not verdict
    assert checked >= 1000
    assert rejected > checked // 2


def random_tiny_instance(seed: int) -> Instance:
    """Up to 4 nodes on a bidirectional ring or path with edge lengths 1-3, 1-2 vehicles, 0-2 jobs."""
    random = np.random.default_rng(seed)
    names = ["A", "B", "C", "D"][: int(random.integers(2, 5))]
    edges = []
    ring = len(names) > 2 and bool(random.integers(2))
    pairs = list(zip(names, names[1:])) + ([(names[-1], names[0])] if ring else [])
    longest = 1
    for a, b in pairs:
        length = int(random.integers(1, 4))
        longest = max(longest, length)
        edges += [
            {"from": a, "to": b, "length": length},
            {"from": b, "to": a, "length": length},
        ]
    starts = random.choice(len(names), size=int(random.integers(1, 3)), replace=False)
    vehicles = [{"id": f"v{i}", "start": names[int(s)]} for i, s in enumerate(starts)]
    deadline = int(random.integers(4, 7))
    horizon = deadline + longest
    jobs = []
    for j in range(int(random.integers(0, 3))):
        pickup, delivery = (names[int(i)] for i in random.choice(len(names), 2))
        lower = int(random.integers(0, horizon))
        upper = int(random.integers(lower, horizon + 1))
        eligible = [v["id"] for v in vehicles if random.integers(2)] or [vehicles[0]["id"]]
        jobs.append(
            {
                "id": str(j + 1),
                "eligible": eligible,
                "tasks": [
                    {"id": "p", "location": pickup, "tw": [0, horizon]},
                    {"id": "d", "location": delivery, "predecessors": ["p"], "tw": [lower, upper]},
                ],
            }
        )
    stations = [name for name in names if random.integers(3) == 0]
    return Instance.model_validate(
        {
            "nodes": names,
            "edges": edges,
            "vehicles": vehicles,
            "jobs": jobs,
            "battery": {
                "operating_range": int(random.integers(2, 7)),
                "charge": 1,
                "discharge": 1,
                "stations": stations,
            },
            "deadline": deadline,
        }
    )


@pytest.mark.anyio
@pytest.mark.parametrize("seed", range(30))
async def test_smt_matches_oracle(seed: int, solver_config: SolverConfig) -> None:
    instance = random_tiny_instance(seed)
    expected = oracle_solve(instance)
    encoded = encode(instance)
    outcome = await run_solver(emit_smtlib(encoded), solver_config)
    assert outcome.status == expected.status
    if outcome.status == SolverStatus.SAT:
        schedule = decode(outcome.model, encoded.layout, instance)
        assert validate(schedule, instance).overall
        assert oracle_check_schedule(schedule, instance)
    if expected.status == SolverStatus.SAT:
        config = solver_config.model_copy(update={"mode": SolveMode.OPTIMIZE_BOUND_SEARCH})
        result = await optimize_by_bound_search(encoded, config)
        assert result.optimal
        assert result.best_cost == expected.cost
