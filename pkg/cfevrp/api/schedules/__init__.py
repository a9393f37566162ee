"""Solving, validation and oracle routes."""

from cfevrp.api.schedules.routes import router

__all__ = ["router"]
