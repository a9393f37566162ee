import asyncio
import logging
import time
from pathlib import Path
from typing import Optional

from loguru import logger as log_context

from cfevrp.backend.config import SolverConfig
from cfevrp.backend.emit import emit_smtlib
from cfevrp.backend.optimize import effective_mode, solve_encoded
from cfevrp.bench.table import render_summary
from cfevrp.db.dao.artifact_dao import artifact_dao
from cfevrp.db.dao.record_dao import RecordDAO
from cfevrp.db.models.instance import Instance
from cfevrp.db.models.record import BenchRecord, RunStatus, SolveResult
from cfevrp.db.models.solver import SolverStatus
from cfevrp.encoder.encode import EncodeOptions, encode
from cfevrp.exceptions import CfevrpError, PipelineError, SolverSpawnError
from cfevrp.generator.spec import GenSpec
from cfevrp.utils.solver_locator import resolve_solver
from cfevrp.validation.decode import decode
from cfevrp.validation.validate import validate

logger = logging.getLogger(__name__)

STATUSES = {
    SolverStatus.SAT: RunStatus.SAT,
    SolverStatus.UNSAT: RunStatus.UNSAT,
    SolverStatus.UNKNOWN: RunStatus.TIMEOUT,
}


def cell_of(path: Path) -> str:
    """Suite cell of a generated instance file; ``-`` for anything else."""
    spec = GenSpec.from_file_name(Path(path).name)
    return spec.cell if spec is not None else "-"


async def solve_instance(
    instance: Instance,
    config: SolverConfig,
    options: Optional[EncodeOptions] = None,
    instance_id: str = "instance",
    cell: str = "-",
) -> SolveResult:
    """
    Encode, emit, solve, decode and validate one loaded instance.

    :param instance: validated instance.
    :param config: solver config.
    :param options: encoder options.
    :param instance_id: id written to the record.
    :param cell: suite cell written to the record.
    :return: record plus schedule and report on sat.
    :raises PipelineError: naming the failing stage; a sat answer whose
        schedule fails validation is refused at the ``validate`` stage.
    """
    started = time.perf_counter()
    try:
        encoded = await asyncio.to_thread(encode, instance, options)
    except CfevrpError as e:
        raise PipelineError("encode", e) from e
    mode = effective_mode(config)
    try:
        document = await asyncio.to_thread(
            emit_smtlib, encoded, mode, (), config.random_seed
        )
    except CfevrpError as e:
        raise PipelineError("emit", e) from e
    generation_time = time.perf_counter() - started

    try:
        result = await solve_encoded(encoded, config.model_copy(update={"mode": mode}), document)
    except CfevrpError as e:
        raise PipelineError("solve", e) from e
    outcome = result.outcome

    schedule = None
    report = None
    if outcome.status == SolverStatus.SAT and outcome.model is not None:
        try:
            schedule = decode(outcome.model, encoded.layout, instance)
        except CfevrpError as e:
            raise PipelineError("decode", e) from e
        include_capacity = options.include_capacity if options is not None else True
        report = validate(schedule, instance, include_capacity)
        if not report.overall:
            logger.warning(
                "%s: solver schedule fails families %s", instance_id, ", ".join(report.failed)
            )
            raise PipelineError(
                "validate", f"schedule fails families {', '.join(report.failed)}"
            )

    record = BenchRecord(
        instance=instance_id,
        cell=cell,
        status=STATUSES[outcome.status],
        gt_s=generation_time,
        st_s=outcome.solve_time,
        cost=schedule.total_cost if schedule is not None else None,
        timeout=outcome.timed_out or outcome.status == SolverStatus.UNKNOWN,
    )
    logger.info(
        "%s: %s in %.2fs (cost %s)",
        instance_id,
        record.status.value,
        record.st_s,
        "-" if record.cost is None else record.cost,
    )
    return SolveResult(
        record=record,
        schedule=schedule,
        report=report,
        optimal=result.optimal,
        core_families=outcome.core_families,
    )


async def solve_one(
    path: Path,
    config: SolverConfig,
    options: Optional[EncodeOptions] = None,
) -> SolveResult:
    """
    Run the whole pipeline on one instance file.

    :param path: instance JSON file.
    :param config: solver config.
    :param options: encoder options.
    :return: record plus schedule and report on sat.
    :raises PipelineError: with the stage that failed, ``load`` included.
    """
    path = Path(path)
    with log_context.contextualize(instance=path.stem):
        try:
            instance = artifact_dao.load_instance(path)
        except CfevrpError as e:
            raise PipelineError("load", e) from e
        return await solve_instance(instance, config, options, path.stem, cell_of(path))


async def bench(
    manifest: Path,
    config: SolverConfig,
    results: Path,
    workers: int = 2,
    options: Optional[EncodeOptions] = None,
) -> tuple[list[BenchRecord], str]:
    """
    Solve every instance of a suite and summarize the records.

    Instances that already have a record in ``results`` are skipped, so an
    interrupted run resumes where it stopped. Records are appended as soon
    as each instance finishes.

    :param manifest: suite ``manifest.json``.
    :param config: solver config.
    :param results: results CSV.
    :param workers: instances solved concurrently.
    :param options: encoder options.
    :return: all records of the CSV and the rendered summary table.
    :raises SolverSpawnError: when the solver is not found.
    """
    if resolve_solver(config.path) is None:
        raise SolverSpawnError(f"solver '{config.path}' not found")

    dao = RecordDAO(results)
    done = {record.instance for record in await dao.list_records()}
    pending = [path for path in artifact_dao.load_manifest(manifest) if path.stem not in done]
    logger.info("Bench: %d instances to run, %d already recorded", len(pending), len(done))

    semaphore = asyncio.Semaphore(workers)

    async def run(path: Path) -> None:
        async with semaphore:
            try:
                result = await solve_one(path, config, options)
            except PipelineError as e:
                logger.error("%s failed: %s", path.name, e)
                return
            await dao.append(result.record)

    await asyncio.gather(*(run(path) for path in pending))

    records = await dao.list_records()
    return records, render_summary(records)
