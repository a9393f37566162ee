import asyncio
import logging
import time
from typing import Optional

from cfevrp.backend.config import SolverConfig
from cfevrp.backend.reader import read_reply
from cfevrp.db.models.solver import SolverOutcome, SolverStatus
from cfevrp.exceptions import SolverOutputError, SolverSpawnError
from cfevrp.utils.solver_locator import resolve_solver

logger = logging.getLogger(__name__)


async def _spawn(executable: str, args: tuple[str, ...]) -> asyncio.subprocess.Process:
    try:
        return await asyncio.create_subprocess_exec(
            executable,
            *args,
            stdin=asyncio.subprocess.PIPE,
            stdout=asyncio.subprocess.PIPE,
            stderr=asyncio.subprocess.PIPE,
        )
    except OSError as e:
        raise SolverSpawnError(f"cannot start solver '{executable}': {e}") from e


async def _terminate(process: asyncio.subprocess.Process) -> None:
    if process.returncode is not None:
        return
    process.kill()
    try:
        await asyncio.wait_for(process.wait(), timeout=5)
    except asyncio.TimeoutError:  # pragma: no cover
        logger.error("Solver process %s did not exit after kill", process.pid)


async def run_solver(
    document: str,
    config: SolverConfig,
    time_limit: Optional[float] = None,
) -> SolverOutcome:
    """
    Run the solver on a script and read its answer.

    The time limit is enforced by killing the process; a killed run is
    reported as ``unknown`` with ``timed_out`` set and the limit as elapsed
    time.

    :param document: complete SMT-LIB2 script.
    :param config: solver executable, arguments and limits.
    :param time_limit: overrides ``config.time_limit`` for this call.
    :return: status, model on sat, unsat core on unsat, wall-clock solve time.
    :raises SolverSpawnError: when the executable cannot be started.
    :raises SolverOutputError: when the output cannot be interpreted.
    """
    limit = time_limit if time_limit is not None else config.time_limit
    executable = resolve_solver(config.path)
    if executable is None:
        raise SolverSpawnError(f"solver '{config.path}' not found")

    logger.info("Starting solver %s (limit %.1fs)", executable, limit)
    started = time.perf_counter()
    process = await _spawn(executable, config.args)
    try:
        stdout, stderr = await asyncio.wait_for(
            process.communicate(document.encode("utf-8")), timeout=limit
        )
    except asyncio.TimeoutError:
        await _terminate(process)
        logger.info("Solver timed out after %.1fs", limit)
        return SolverOutcome(
            status=SolverStatus.UNKNOWN, solve_time=limit, timed_out=True
        )
    except BaseException:
        await _terminate(process)
        raise
    elapsed = time.perf_counter() - started

    text = stdout.decode("utf-8", errors="replace")
    reply = read_reply(text)
    if reply.status is None:
        output = text + stderr.decode("utf-8", errors="replace")
        raise SolverOutputError(
            f"no status in solver output (exit code {process.returncode})", output
        )

    logger.info("Solver answered %s in %.2fs", reply.status.value, elapsed)
    for error in reply.errors:
        logger.warning("Solver error: %s", error)
    return SolverOutcome(
        status=reply.status,
        model=reply.model if reply.status == SolverStatus.SAT else None,
        solve_time=elapsed,
        unsat_core=reply.unsat_core,
        errors=reply.errors,
    )
