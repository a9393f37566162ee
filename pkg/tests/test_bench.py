import os
from pathlib import Path

import pytest

from cfevrp.backend.config import SolverConfig
from cfevrp.bench.harness import bench, cell_of, solve_instance, solve_one
from cfevrp.bench.table import render_summary, summarize
from cfevrp.db.dao.artifact_dao import artifact_dao
from cfevrp.db.dao.record_dao import RecordDAO, parse_records
from cfevrp.db.models.instance import Instance
from cfevrp.db.models.record import BenchRecord, RunStatus
from cfevrp.encoder.encode import EncodeOptions
from cfevrp.exceptions import PipelineError, SolverSpawnError
from cfevrp.generator.generate import generate
from cfevrp.generator.spec import GenSpec, InstanceClass
from cfevrp.settings import SolveMode
from tests.conftest import line_instance


def _record(instance: str, cell: str, status: RunStatus, st: float = 1.0, gt: float = 0.5) -> BenchRecord:
    return BenchRecord(
        instance=instance,
        cell=cell,
        status=status,
        gt_s=gt,
        st_s=st,
        cost=10 if status == RunStatus.SAT else None,
        timeout=status == RunStatus.TIMEOUT,
    )


def test_cost_only_for_sat() -> None:
    with pytest.raises(ValueError):
        BenchRecord(instance="i", cell="-", status=RunStatus.UNSAT, gt_s=0, st_s=0, cost=3)
    with pytest.raises(ValueError):
        BenchRecord(instance="i", cell="-", status=RunStatus.SAT, gt_s=0, st_s=0)


def test_summary_of_one_cell() -> None:
    cell = "15-3-5/r0/d15"
    records = [
        _record("a", cell, RunStatus.SAT, st=2.0),
        _record("b", cell, RunStatus.SAT, st=4.0),
        _record("c", cell, RunStatus.UNSAT, st=1.0),
        _record("d", cell, RunStatus.TIMEOUT, st=300.0),
    ]
    (summary,) = summarize(records)
    assert summary.total == 4
    assert summary.solved == 3
    assert summary.sat == 2
    assert summary.unsat == 1
    assert summary.sat_time == 3.0
    assert summary.unsat_time == 1.0
    assert summary.generation_time == 0.5


def test_all_unsat_cell_renders_dash() -> None:
    records = [_record(str(i), "25-4-7/r0/d15", RunStatus.UNSAT) for i in range(5)]
    table = render_summary(records)
    header, row = table.splitlines()
    assert "25-4-7 r0 Sol" in header
    assert row.split()[:5] == ["d15", "5/5", "0.50", "-|1.00", "0|5"]


def test_rows_per_deadline_columns_per_cell() -> None:
    records = [
        _record("a", "15-3-5/r0/d20", RunStatus.SAT),
        _record("b", "15-3-5/r0/d15", RunStatus.SAT),
        _record("c", "15-3-5/r25/d15", RunStatus.UNSAT),
    ]
    lines = render_summary(records).splitlines()
    assert [line.split()[0] for line in lines[1:]] == ["d15", "d20"]
    assert lines[2].split()[5:] == ["-", "-", "-", "-"]


def test_empty_records_empty_table() -> None:
    assert render_summary([]) == ""


@pytest.mark.anyio
async def test_record_dao_round_trip(tmp_path: Path) -> None:
    dao = RecordDAO(tmp_path / "out" / "results.csv")
    assert await dao.list_records() == []
    first = _record("a", "15-3-5/r0/d15", RunStatus.SAT)
    second = _record("b", "-", RunStatus.TIMEOUT)
    await dao.append(first)
    await dao.append(second)
    text = dao.path.read_text(encoding="utf-8")
    assert text.splitlines()[0] == "instance,cell,status,gt_s,st_s,cost,timeout"
    assert len(text.splitlines()) == 3
    assert [r.instance for r in parse_records(text)] == ["a", "b"]
    assert (await dao.list_records())[1].timeout


def test_cell_of() -> None:
    assert cell_of(Path("x/15-3-5_r25_d20_s1.json")) == "15-3-5/r25/d20"
    assert cell_of(Path("fig1.json")) == "-"


@pytest.mark.anyio
async def test_corrupted_file_fails_at_load(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{"nodes": [', encoding="utf-8")
    with pytest.raises(PipelineError) as error:
        await solve_one(path, SolverConfig(path="z3"))
    assert error.value.stage == "load"


@pytest.mark.anyio
async def test_missing_solver_fails_at_solve(instance_file: Path) -> None:
    with pytest.raises(PipelineError) as error:
        await solve_one(instance_file, SolverConfig(path="no-such-solver-executable"))
    assert error.value.stage == "solve"
    assert isinstance(error.value.cause, SolverSpawnError)


@pytest.mark.anyio
async def test_bench_needs_a_solver(tmp_path: Path) -> None:
    with pytest.raises(SolverSpawnError):
        await bench(tmp_path / "manifest.json", SolverConfig(path="no-such-solver-executable"), tmp_path / "r.csv")


@pytest.mark.anyio
async def test_solve_one_sat(instance_file: Path, solver_config: SolverConfig) -> None:
    result = await solve_one(instance_file, solver_config)
    assert result.record.status == RunStatus.SAT
    assert result.record.instance == "line"
    assert result.record.cell == "-"
    assert result.report is not None and result.report.overall
    assert result.record.cost == result.schedule.total_cost


@pytest.mark.anyio
async def test_solve_one_optimal(instance_file: Path, solver_config: SolverConfig) -> None:
    config = solver_config.model_copy(update={"mode": SolveMode.OPTIMIZE_BOUND_SEARCH})
    result = await solve_one(instance_file, config)
    assert result.optimal
    assert result.record.cost == 2


@pytest.mark.anyio
async def test_solve_instance_unsat(solver_config: SolverConfig) -> None:
    jobs = [
        {
            "id": "1",
            "eligible": ["a"],
            "tasks": [{"id": "far", "location": "B", "tw": [0, 0]}],
        }
    ]
    result = await solve_instance(line_instance(jobs), solver_config)
    assert result.record.status == RunStatus.UNSAT
    assert result.record.cost is None
    assert result.schedule is None


@pytest.mark.anyio
async def test_bench_resumes(tmp_path: Path, solver_config: SolverConfig) -> None:
    names = []
    for seed, instance in enumerate([line_instance(), line_instance(jobs=[])]):
        name = f"15-3-5_r0_d15_s{seed}.json"
        artifact_dao.save_instance(instance, tmp_path / name)
        names.append(name)
    artifact_dao.save_manifest(names, tmp_path / "manifest.json")
    results = tmp_path / "results.csv"
    await RecordDAO(results).append(
        BenchRecord(instance="15-3-5_r0_d15_s1", cell="15-3-5/r0/d15", status=RunStatus.SAT, gt_s=0, st_s=0, cost=0)
    )

    records, table = await bench(tmp_path / "manifest.json", solver_config, results, workers=2)

    assert sorted(r.instance for r in records) == ["15-3-5_r0_d15_s0", "15-3-5_r0_d15_s1"]
    assert all(r.status == RunStatus.SAT for r in records)
    assert "2/2" in table
    again, same_table = await bench(tmp_path / "manifest.json", solver_config, results)
    assert len(again) == 2
    assert same_table == table


@pytest.mark.anyio
@pytest.mark.skipif(not os.environ.get("CFEVRP_SLOW_TESTS"), reason="set CFEVRP_SLOW_TESTS to run")
async def test_fig1_end_to_end(fig1: Instance, solver_config: SolverConfig) -> None:
    config = solver_config.model_copy(update={"time_limit": 1800})
    result = await solve_instance(fig1, config, instance_id="fig1")
    assert result.record.status == RunStatus.SAT
    assert result.report.overall
    owners = {}
    for vehicle, timeline in result.schedule.vehicles.items():
        for event in timeline.services:
            owners[event.job] = vehicle
    assert len({owners[job] for job in ("1", "2", "3", "4", "5")}) == 5
    assert "x1" in owners


def crossing_instance() -> Instance:
    """Two vehicles must swap ends of a single-lane A <-> B by time 1."""
    return Instance.model_validate(
        {
            "nodes": ["A", "B"],
            "edges": [{"from": "A", "to": "B"}, {"from": "B", "to": "A"}],
            "vehicles": [{"id": "a", "start": "A"}, {"id": "b", "start": "B"}],
            "jobs": [
                {"id": "1", "eligible": ["a"], "tasks": [{"id": "p", "location": "B", "tw": [1, 1]}]},
                {"id": "2", "eligible": ["b"], "tasks": [{"id": "p", "location": "A", "tw": [1, 1]}]},
            ],
            "battery": {"operating_range": 5, "charge": 1, "discharge": 1},
            "deadline": 2,
        }
    )


@pytest.mark.anyio
async def test_solve_without_capacity(solver_config: SolverConfig) -> None:
    instance = crossing_instance()
    strict = await solve_instance(instance, solver_config)
    assert strict.record.status == RunStatus.UNSAT

    relaxed = await solve_instance(instance, solver_config, EncodeOptions(include_capacity=False))
    assert relaxed.record.status == RunStatus.SAT
    assert relaxed.report.overall
    assert relaxed.report.warnings


@pytest.mark.anyio
@pytest.mark.skipif(not os.environ.get("CFEVRP_SLOW_TESTS"), reason="set CFEVRP_SLOW_TESTS to run")
async def test_generated_small_instances_are_mostly_sat(solver_config: SolverConfig) -> None:
    config = solver_config.model_copy(update={"time_limit": 600})
    options = EncodeOptions(include_capacity=False)
    solved = 0
    for seed in range(20):
        spec = GenSpec(instance_class=InstanceClass.SMALL, edge_reduction=0, deadline=30, seed=seed)
        result = await solve_instance(generate(spec), config, options, instance_id=spec.file_name)
        solved += result.record.status == RunStatus.SAT
    assert solved >= 12
