from fastapi import APIRouter, Depends
from pydantic import BaseModel

from cfevrp.api.dependencies import get_solver_path

router = APIRouter()


class Health(BaseModel):
    status: str
    solver: str | None = None


@router.get("/health", response_model=Health)
async def health_check(solver: str | None = Depends(get_solver_path)) -> Health:
    """
    Checks the health of the service.

    :return: status and the solver executable in use, null when none was found.
    """
    return Health(status="ok", solver=solver)
