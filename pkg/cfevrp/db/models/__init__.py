"""Toolkit data model."""

from .instance import (
    BatteryParams,
    Edge,
    EdgeAttr,
    Graph,
    Instance,
    Job,
    Task,
    Vehicle,
    shortest_path_length,
)
from .oracle import OracleResult
from .record import BenchRecord, RunStatus, SolveResult
from .report import FAMILIES, FamilyResult, ValidationReport, Witness
from .schedule import MoveEvent, Schedule, ServiceEvent, VehicleTimeline
from .solver import OptimizationResult, SolverModel, SolverOutcome, SolverStatus

__all__ = [
    "BatteryParams",
    "BenchRecord",
    "Edge",
    "EdgeAttr",
    "FAMILIES",
    "FamilyResult",
    "Graph",
    "Instance",
    "Job",
    "MoveEvent",
    "OptimizationResult",
    "OracleResult",
    "RunStatus",
    "Schedule",
    "ServiceEvent",
    "SolverModel",
    "SolverOutcome",
    "SolverStatus",
    "SolveResult",
    "Task",
    "ValidationReport",
    "Vehicle",
    "VehicleTimeline",
    "Witness",
    "shortest_path_length",
]
