"""DAO classes."""

from .artifact_dao import ArtifactDAO, artifact_dao, load_instance, save_instance
from .record_dao import RecordDAO, parse_records

__all__ = [
    "ArtifactDAO",
    "RecordDAO",
    "artifact_dao",
    "load_instance",
    "parse_records",
    "save_instance",
]
