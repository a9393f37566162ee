from fastapi.routing import APIRouter

from cfevrp.api import instances, monitoring, schedules

api_router = APIRouter()
api_router.include_router(monitoring.router)
api_router.include_router(instances.router, prefix="/instances", tags=["instances"])
api_router.include_router(schedules.router, prefix="/schedules", tags=["schedules"])
