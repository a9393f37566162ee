"""Service health route."""

from cfevrp.api.monitoring.views import router

__all__ = ["router"]
