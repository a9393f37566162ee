"""Summary of benchmark records in the layout of a results table."""

from collections import defaultdict
from statistics import mean
from typing import Iterable, NamedTuple, Optional

from cfevrp.db.models.record import BenchRecord, RunStatus

MISSING = "-"


class CellSummary(NamedTuple):
    """Aggregates of one class/reduction/deadline cell."""

    cell: str
    total: int
    sat: int
    unsat: int
    generation_time: float
    sat_time: Optional[float]
    unsat_time: Optional[float]

    @property
    def solved(self) -> int:
        return self.sat + self.unsat


def _split_cell(cell: str) -> tuple[str, str, str]:
    parts = cell.split("/")
    if len(parts) != 3:
        return cell, MISSING, MISSING
    return parts[0], parts[1], parts[2]


def summarize(records: Iterable[BenchRecord]) -> list[CellSummary]:
    """Per-cell aggregates; a pure function of the records."""
    cells: dict[str, list[BenchRecord]] = defaultdict(list)
    for record in records:
        cells[record.cell].append(record)

    summaries = []
    for cell in sorted(cells):
        rows = cells[cell]
        sat = [r.st_s for r in rows if r.status == RunStatus.SAT]
        unsat = [r.st_s for r in rows if r.status == RunStatus.UNSAT]
        summaries.append(
            CellSummary(
                cell=cell,
                total=len(rows),
                sat=len(sat),
                unsat=len(unsat),
                generation_time=mean(r.gt_s for r in rows),
                sat_time=mean(sat) if sat else None,
                unsat_time=mean(unsat) if unsat else None,
            )
        )
    return summaries


def _seconds(value: Optional[float]) -> str:
    return MISSING if value is None else f"{value:.2f}"


def _deadline_key(deadline: str) -> tuple[int, str]:
    digits = deadline.lstrip("d")
    return (int(digits), deadline) if digits.isdigit() else (1 << 30, deadline)


def render_summary(records: Iterable[BenchRecord]) -> str:
    """
    Render the summary table.

    One row per deadline and one column group per class and reduction, with
    Sol (solved/total), GT (mean generation time), ST (mean solve time of
    sat|unsat runs) and SC (sat|unsat counts). ``-`` marks a mean without
    runs behind it.

    :param records: benchmark records.
    :return: plain-text table; empty for no records.
    """
    summaries = summarize(records)
    if not summaries:
        return ""

    by_key = {_split_cell(s.cell): s for s in summaries}
    columns = sorted({(cls, red) for cls, red, _ in by_key})
    deadlines = sorted({dl for _, _, dl in by_key}, key=_deadline_key)

    header = ["deadline"]
    for cls, red in columns:
        prefix = f"{cls} {red}"
        header += [f"{prefix} Sol", f"{prefix} GT", f"{prefix} ST", f"{prefix} SC"]
    rows = [header]
    for dl in deadlines:
        row = [dl]
        for cls, red in columns:
            summary = by_key.get((cls, red, dl))
            if summary is None:
                row += [MISSING] * 4
                continue
            row += [
                f"{summary.solved}/{summary.total}",
                _seconds(summary.generation_time),
                f"{_seconds(summary.sat_time)}|{_seconds(summary.unsat_time)}",
                f"{summary.sat}|{summary.unsat}",
            ]
        rows.append(row)

    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return "\n".join(
        "  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip()
        for row in rows
    )
