"""Exhaustive ground truth for tiny instances."""

from .replay import oracle_check_schedule, replay_schedule
from .search import JointState, Transition, check_limits, oracle_solve, witness_schedule

__all__ = [
    "JointState",
    "Transition",
    "check_limits",
    "oracle_check_schedule",
    "oracle_solve",
    "replay_schedule",
    "witness_schedule",
]
