"""Data Access Object for instance, schedule and manifest files."""

from importlib import resources
from pathlib import Path
from typing import Union

import ujson
from pydantic import ValidationError

from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import Schedule
from cfevrp.exceptions import InstanceError

PathLike = Union[str, Path]

FIG1_RESOURCE = "fig1.json"


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(piece) for piece in item["loc"])
        message = item["msg"].removeprefix("Value error, ")
        parts.append(f"{loc}: {message}" if loc else message)
    return "; ".join(parts)


class ArtifactDAO:
    """Reads and writes the toolkit's JSON documents."""

    def parse_instance(self, text: str, source: str = "<string>") -> Instance:
        """
        Parse and validate an instance document.

        :param text: JSON text.
        :param source: name used in error messages.
        :return: validated instance.
        :raises InstanceError: on parse errors and broken invariants.
        """
        try:
            document = ujson.loads(text)
        except ValueError as e:
            raise InstanceError(f"parse error: {e}", path=source) from e
        if not isinstance(document, dict):
            raise InstanceError("parse error: top level must be an object", path=source)
        try:
            return Instance.model_validate(document)
        except ValidationError as e:
            raise InstanceError(_format_validation_error(e), path=source) from e

    def load_instance(self, path: PathLike) -> Instance:
        """
        Load an instance file.

        :param path: instance JSON file.
        :return: validated instance with derived fields available.
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise InstanceError(f"cannot read file: {e}", path=str(path)) from e
        return self.parse_instance(text, source=str(path))

    def dump_instance(self, instance: Instance) -> str:
        document = instance.model_dump(mode="json", by_alias=True)
        return ujson.dumps(document, indent=2, ensure_ascii=False) + "\n"

    def save_instance(self, instance: Instance, path: PathLike) -> None:
        """
        Write an instance file; the horizon is never stored.

        :param instance: instance to write.
        :param path: destination file.
        :raises OSError: when the file cannot be written.
        """
        Path(path).write_text(self.dump_instance(instance), encoding="utf-8")

    def load_fig1(self) -> Instance:
        """The bundled five-vehicle reference instance."""
        text = resources.files("cfevrp.data").joinpath(FIG1_RESOURCE).read_text("utf-8")
        return self.parse_instance(text, source=FIG1_RESOURCE)

    def load_schedule(self, path: PathLike) -> Schedule:
        return Schedule.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def save_schedule(self, schedule: Schedule, path: PathLike) -> None:
        Path(path).write_text(schedule.model_dump_json(indent=2) + "\n", encoding="utf-8")

    def load_manifest(self, path: PathLike) -> list[Path]:
        """Instance files listed by a suite manifest, resolved against its directory."""
        path = Path(path)
        document = ujson.loads(path.read_text(encoding="utf-8"))
        return [path.parent / name for name in document.get("instances", [])]

    def save_manifest(self, names: list[str], path: PathLike) -> None:
        document = {"instances": names}
        Path(path).write_text(ujson.dumps(document, indent=2) + "\n", encoding="utf-8")


# Global DAO instance
artifact_dao = ArtifactDAO()


def load_instance(path: PathLike) -> Instance:
    return artifact_dao.load_instance(path)


def save_instance(instance: Instance, path: PathLike) -> None:
    artifact_dao.save_instance(instance, path)
