import logging
from contextlib import asynccontextmanager
from typing import AsyncGenerator

from fastapi import FastAPI

from cfevrp.log import configure_logging
from cfevrp.settings import settings
from cfevrp.utils.solver_locator import resolve_solver

logger = logging.getLogger(__name__)


def _setup_solver(app: FastAPI) -> None:
    """Resolve the solver once; a missing solver only disables solving."""
    app.state.solver_path = resolve_solver(settings.solver_path)
    if app.state.solver_path is None:
        logger.warning("No solver found, /schedules/solve will answer 503")


@asynccontextmanager
async def lifespan_setup(
    app: FastAPI,
) -> AsyncGenerator[None, None]:  # pragma: no cover
    """
    Actions to run on application startup.

    This function uses fastAPI app to store data
    in the state, such as the solver executable.

    :param app: the fastAPI application.
    :return: function that actually performs actions.
    """
    configure_logging()
    _setup_solver(app)

    yield
