"""Toolkit exceptions."""

from typing import Optional


class CfevrpError(Exception):
    """Base class for every error raised by the toolkit."""


class InstanceError(CfevrpError):
    """Instance file could not be parsed or violates an invariant."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class DecodeError(CfevrpError):
    """Solver model is inconsistent with the encoding it answers."""

    def __init__(self, family: str, message: str):
        self.family = family
        super().__init__(f"family {family}: {message}")


class SolverError(CfevrpError):
    """Base class for solver process failures."""


class SolverSpawnError(SolverError):
    """Solver executable missing or could not be started."""


class SolverOutputError(SolverError):
    """Solver answered with something the reader cannot interpret."""

    def __init__(self, message: str, output: str):
        self.output = output
        super().__init__(f"{message}\n--- solver output ---\n{output}")


class OracleLimitError(CfevrpError):
    """Instance is too large for exhaustive search."""


class GenerationError(CfevrpError):
    """Instance generation gave up."""


class PipelineError(CfevrpError):
    """A stage of the solve pipeline failed."""

    def __init__(self, stage: str, cause: BaseException | str):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")
