from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from cfevrp.settings import BoundStrategy, SolveMode, settings
from cfevrp.utils.solver_locator import advertises_optimization


class SolverConfig(BaseModel):
    """How to run the external SMT solver."""

    model_config = ConfigDict(frozen=True)

    path: str = Field(..., description="Solver executable")
    args: tuple[str, ...] = ("-smt2", "-in")
    time_limit: float = Field(default=300.0, gt=0, description="Seconds per instance")
    mode: SolveMode = SolveMode.SATISFY
    bound_strategy: BoundStrategy = BoundStrategy.BISECT
    random_seed: Optional[int] = None
    native_optimization: Optional[bool] = Field(
        default=None,
        description="Solver accepts (minimize ...); None guesses from the executable name",
    )

    @property
    def supports_optimization(self) -> bool:
        if self.native_optimization is not None:
            return self.native_optimization
        return advertises_optimization(self.path)

    @classmethod
    def from_settings(cls, **overrides: Any) -> "SolverConfig":
        """
        Build a config from settings; ``None`` overrides are ignored.

        :param overrides: per-run values, e.g. from CLI flags.
        :return: solver config.
        """
        values: dict[str, Any] = {
            "path": settings.solver_path,
            "args": tuple(settings.solver_args),
            "time_limit": settings.time_limit,
            "mode": settings.mode,
            "bound_strategy": settings.bound_strategy,
            "random_seed": settings.random_seed,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
