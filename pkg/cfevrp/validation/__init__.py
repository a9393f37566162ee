"""Schedule decoding and independent validation."""

from .decode import decode, schedule_cost
from .validate import validate

__all__ = ["decode", "schedule_cost", "validate"]
