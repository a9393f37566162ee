import logging
import time
from typing import Optional

from cfevrp.backend.config import SolverConfig
from cfevrp.backend.driver import run_solver
from cfevrp.backend.emit import bound_assertion, emit_smtlib, fixing_assertions
from cfevrp.db.models.solver import (
    OptimizationResult,
    SolverModel,
    SolverOutcome,
    SolverStatus,
)
from cfevrp.encoder.model import EncodedModel
from cfevrp.settings import BoundStrategy, SolveMode

logger = logging.getLogger(__name__)


def _cost(encoded: EncodedModel, outcome: SolverOutcome) -> Optional[int]:
    if outcome.model is None:
        return None
    return outcome.model.integers.get(encoded.objective)


async def optimize_by_bound_search(
    encoded: EncodedModel,
    config: SolverConfig,
) -> OptimizationResult:
    """
    Minimize the objective with repeated bounded satisfiability checks.

    Every check runs in a fresh solver process with ``objective <= bound``
    added. The whole search shares ``config.time_limit``; when it runs out
    the best model so far is returned without the optimality flag.

    :param encoded: encoded instance.
    :param config: solver config; ``bound_strategy`` picks linear or bisection.
    :return: best outcome, its cost and whether optimality was proven.
    """
    deadline = time.perf_counter() + config.time_limit
    mode = SolveMode.OPTIMIZE_BOUND_SEARCH

    def remaining() -> float:
        return max(deadline - time.perf_counter(), 0.001)

    first = await run_solver(
        emit_smtlib(encoded, mode, random_seed=config.random_seed), config, remaining()
    )
    if first.status != SolverStatus.SAT:
        return OptimizationResult(outcome=first, iterations=1)

    best = first
    best_cost = _cost(encoded, first)
    lower = 0
    iterations = 1
    solve_time = first.solve_time
    timed_out = False

    while best_cost is not None and lower < best_cost:
        if config.bound_strategy == BoundStrategy.LINEAR:
            bound = best_cost - 1
        else:
            bound = (lower + best_cost - 1) // 2
        document = emit_smtlib(
            encoded,
            mode,
            extra=[bound_assertion(encoded, bound)],
            random_seed=config.random_seed,
        )
        outcome = await run_solver(document, config, remaining())
        iterations += 1
        solve_time += outcome.solve_time
        logger.info(
            "Bound search: cost <= %d is %s (best %d, lower %d)",
            bound,
            outcome.status.value,
            best_cost,
            lower,
        )
        if outcome.status == SolverStatus.SAT:
            best = outcome
            best_cost = _cost(encoded, outcome)
        elif outcome.status == SolverStatus.UNSAT:
            lower = bound + 1
        else:
            timed_out = outcome.timed_out
            break

    optimal = best_cost is not None and lower >= best_cost
    return OptimizationResult(
        outcome=best.model_copy(update={"solve_time": solve_time, "timed_out": timed_out}),
        best_cost=best_cost,
        optimal=optimal,
        iterations=iterations,
    )


def effective_mode(config: SolverConfig) -> SolveMode:
    """Configured mode, with native optimization downgraded when unsupported."""
    if config.mode == SolveMode.OPTIMIZE_NATIVE and not config.supports_optimization:
        logger.info("Solver does not optimize natively, using bound search")
        return SolveMode.OPTIMIZE_BOUND_SEARCH
    return config.mode


async def solve_encoded(
    encoded: EncodedModel,
    config: SolverConfig,
    document: Optional[str] = None,
) -> OptimizationResult:
    """
    Solve in the configured mode.

    Native optimization falls back to bound search when the solver does
    not accept ``(minimize ...)``.

    :param encoded: encoded instance.
    :param config: solver config.
    :param document: script already emitted for the effective mode.
    :return: outcome with the model's cost; ``optimal`` only when proven.
    """
    mode = effective_mode(config)
    if mode == SolveMode.OPTIMIZE_BOUND_SEARCH:
        return await optimize_by_bound_search(encoded, config)

    if document is None:
        document = emit_smtlib(encoded, mode, random_seed=config.random_seed)
    outcome = await run_solver(document, config)
    cost = _cost(encoded, outcome)
    return OptimizationResult(
        outcome=outcome,
        best_cost=cost,
        optimal=mode == SolveMode.OPTIMIZE_NATIVE and cost is not None,
        iterations=1,
    )


async def check_model_authenticity(
    encoded: EncodedModel,
    model: SolverModel,
    config: SolverConfig,
) -> bool:
    """
    Re-check the assertions with every variable pinned to its model value.

    :param encoded: encoded instance the model answers.
    :param model: values read back from the solver.
    :param config: solver config.
    :return: True when the pinned script is still sat.
    """
    document = emit_smtlib(
        encoded, SolveMode.OPTIMIZE_BOUND_SEARCH, extra=fixing_assertions(model)
    )
    outcome = await run_solver(document, config)
    return outcome.status == SolverStatus.SAT
