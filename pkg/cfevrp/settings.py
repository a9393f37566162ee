import enum
import re
from pathlib import Path
from typing import Annotated, Any, Optional

from pydantic import BeforeValidator, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def split_solver_args(value: Any) -> list[str]:
    """
    Solver command-line arguments from ``CFEVRP_SOLVER_ARGS``.

    ``-smt2,-in`` and ``-smt2 -in`` both give ``["-smt2", "-in"]``; a JSON
    list is decoded by the settings source and arrives here as a list.

    :raises ValueError: for anything but a string or a sequence.
    """
    if isinstance(value, str):
        return [arg for arg in re.split(r"[,\s]+", value) if arg]
    if isinstance(value, (list, tuple)):
        return [str(arg) for arg in value]
    raise ValueError(f"solver arguments must be a string or a list, got {value!r}")


class LogLevel(str, enum.Enum):
    """Possible log levels."""

    NOTSET = "NOTSET"
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    FATAL = "FATAL"


class SolveMode(str, enum.Enum):
    """How the solver is driven."""

    SATISFY = "satisfy"
    OPTIMIZE_NATIVE = "optimize-native"
    OPTIMIZE_BOUND_SEARCH = "optimize-bound-search"


class BoundStrategy(str, enum.Enum):
    """How the cost bound shrinks between bound-search calls."""

    LINEAR = "linear"
    BISECT = "bisect"


class Settings(BaseSettings):
    """
    Toolkit settings.

    These parameters can be configured
    with environment variables.
    """

    host: str = "127.0.0.1"
    port: int = 8000
    environment: str = "dev"

    log_level: LogLevel = LogLevel.INFO

    @property
    def is_development(self) -> bool:
        """Check if running in development environment."""
        return self.environment in ["dev", "development"]

    # Solver process
    solver_path: str = "z3"
    solver_args: Annotated[list[str] | str, BeforeValidator(split_solver_args)] = [
        "-smt2",
        "-in",
    ]
    time_limit: float = Field(default=300.0, gt=0)
    mode: SolveMode = SolveMode.SATISFY
    bound_strategy: BoundStrategy = BoundStrategy.BISECT
    random_seed: Optional[int] = None

    # Bench harness
    workers: int = Field(default=2, ge=1)
    results_dir: Path = Path("results")

    # Encoder
    pairwise_threshold: int = Field(default=6, ge=1)

    # Oracle guard
    oracle_max_nodes: int = 9
    oracle_max_vehicles: int = 2
    oracle_max_horizon: int = 12

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="CFEVRP_",
        env_file_encoding="utf-8",
    )


settings = Settings()
