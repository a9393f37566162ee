"""Solving, validation and oracle routes."""

import asyncio
from typing import Optional

from fastapi import APIRouter, Depends, HTTPException, status

from cfevrp.api.dependencies import get_solver_path
from cfevrp.api.errors import http_error
from cfevrp.api.schedules.schema import OracleRequest, SolveRequest, ValidateRequest
from cfevrp.backend.config import SolverConfig
from cfevrp.bench.harness import solve_instance
from cfevrp.db.models.oracle import OracleResult
from cfevrp.db.models.record import SolveResult
from cfevrp.db.models.report import ValidationReport
from cfevrp.encoder.encode import EncodeOptions
from cfevrp.exceptions import CfevrpError
from cfevrp.oracle.search import oracle_solve
from cfevrp.validation.validate import validate

router = APIRouter()


@router.post("/solve", response_model=SolveResult)
async def solve_schedule(
    request: SolveRequest,
    solver: Optional[str] = Depends(get_solver_path),
) -> SolveResult:
    """
    Solve an instance with the external solver.

    :param request: instance plus optional mode and time limit.
    :return: record, validated schedule and its report.
    """
    if solver is None:
        raise HTTPException(
            status_code=status.HTTP_503_SERVICE_UNAVAILABLE,
            detail="no SMT solver available",
        )
    config = SolverConfig.from_settings(
        path=solver, mode=request.mode, time_limit=request.time_limit
    )
    options = EncodeOptions(include_capacity=request.include_capacity)
    try:
        return await solve_instance(request.instance, config, options)
    except CfevrpError as e:
        raise http_error(e)


@router.post("/validate", response_model=ValidationReport)
async def validate_schedule(request: ValidateRequest) -> ValidationReport:
    """
    Check a schedule against every constraint family.

    :param request: instance and schedule.
    :return: per-family report.
    """
    return validate(request.schedule, request.instance, request.include_capacity)


@router.post("/oracle", response_model=OracleResult)
async def oracle_schedule(request: OracleRequest) -> OracleResult:
    """
    Solve a tiny instance by exhaustive search.

    :param request: instance and whether to minimize the cost.
    :return: status, cost and witness schedule.
    """
    try:
        return await asyncio.to_thread(oracle_solve, request.instance, request.optimize)
    except CfevrpError as e:
        raise http_error(e)
