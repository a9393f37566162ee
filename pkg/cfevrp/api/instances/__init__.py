"""Instance generation and encoding routes."""

from cfevrp.api.instances.routes import router

__all__ = ["router"]
