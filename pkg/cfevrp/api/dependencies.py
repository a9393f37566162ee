from typing import Optional

from fastapi import Request

from cfevrp.settings import settings
from cfevrp.utils.solver_locator import resolve_solver


def get_solver_path(request: Request) -> Optional[str]:
    """
    Solver executable resolved at start-up.

    Falls back to resolving now when the application started without its
    lifespan (e.g. under an ASGI test transport).

    :param request: current request.
    :return: absolute solver path or None.
    """
    if hasattr(request.app.state, "solver_path"):
        return request.app.state.solver_path
    return resolve_solver(settings.solver_path)
