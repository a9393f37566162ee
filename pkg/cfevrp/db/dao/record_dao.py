"""Results CSV access: the benchmark's system of record."""

import asyncio
import csv
import io
from pathlib import Path
from typing import List

import aiofiles

from cfevrp.db.models.record import CSV_COLUMNS, BenchRecord


def _format_row(values: list[str]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerow(values)
    return buffer.getvalue()


class RecordDAO:
    """Appends benchmark records through a single serialized writer."""

    def __init__(self, path: Path):
        """
        Initialize the DAO for one CSV file.

        :param path: results CSV; created with a header on first append.
        """
        self.path = Path(path)
        self._lock = asyncio.Lock()

    async def append(self, record: BenchRecord) -> None:
        """
        Append one record, writing the header first if the file is new.

        :param record: record to persist.
        """
        async with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fresh = not self.path.exists() or self.path.stat().st_size == 0
            async with aiofiles.open(self.path, "a", encoding="utf-8") as handle:
                if fresh:
                    await handle.write(_format_row(list(CSV_COLUMNS)))
                await handle.write(_format_row(record.to_row()))

    async def list_records(self) -> List[BenchRecord]:
        """
        Read every record of the file.

        :return: records in file order; empty when the file does not exist.
        """
        if not self.path.exists():
            return []
        async with aiofiles.open(self.path, "r", encoding="utf-8") as handle:
            text = await handle.read()
        return parse_records(text)


def parse_records(text: str) -> List[BenchRecord]:
    reader = csv.DictReader(io.StringIO(text))
    return [BenchRecord.from_row(row) for row in reader]
