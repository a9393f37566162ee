"""Per-step transition rules shared by the exhaustive search and schedule replay."""

from collections import Counter
from typing import NamedTuple, Optional

from cfevrp.db.models.instance import Instance

AT = "at"
TRANSIT = "transit"
FREE = "free"


class Position(NamedTuple):
    """
    Where a vehicle is at one time step.

    ``at``: standing at ``node``. ``transit``: driving towards ``node``,
    arriving at ``arrival``. ``free``: released by a departure that cannot
    complete within the horizon; no longer tied to any node.
    """

    kind: str
    node: str = ""
    arrival: int = -1


class Watch(NamedTuple):
    """Vehicles waiting at the far end of a used segment may not head for ``node``."""

    node: str
    vehicles: tuple[int, ...]
    limit: int
    until: int


def depart(instance: Instance, source: str, target: str, t: int) -> Position:
    d = instance.graph.edges[(source, target)].length
    if t + d > instance.horizon:
        return Position(FREE)
    if d == 1:
        return Position(AT, target)
    return Position(TRANSIT, target, t + d)


def advance(position: Position, t: int) -> Position:
    """Position at ``t + 1`` of a vehicle that starts no move at ``t``."""
    if position.kind == TRANSIT and position.arrival == t + 1:
        return Position(AT, position.node)
    return position


def next_charge(
    instance: Instance, position: Position, target: Optional[str], rc: int, t: int
) -> Optional[int]:
    """
    Charge at ``t + 1``; None when no rule fixes it.

    :param position: position at ``t``.
    :param target: destination of a move started at ``t``, if any.
    :param rc: charge at ``t``.
    :param t: current time.
    """
    battery = instance.battery
    if position.kind == TRANSIT:
        return rc - battery.discharge_coeff
    if position.kind == FREE:
        return None
    if target is not None:
        d = instance.graph.edges[(position.node, target)].length
        released = t + d > instance.horizon
        return None if released else rc - battery.discharge_coeff
    if position.node in battery.charging_stations:
        return rc + battery.charge_coeff
    return rc


def overcrowded(instance: Instance, positions: tuple[Position, ...]) -> Optional[str]:
    """A non-hub node holding more than one vehicle, if any."""
    counts = Counter(p.node for p in positions if p.kind == AT)
    for node, count in counts.items():
        if count > 1 and not instance.graph.is_hub(node):
            return node
    return None


def traffic_step(
    instance: Instance,
    t: int,
    positions: tuple[Position, ...],
    moves: dict[int, tuple[str, str]],
    watches: tuple[Watch, ...],
) -> tuple[Optional[str], tuple[Watch, ...]]:
    """
    Check segment capacity for the moves started at ``t``.

    :param positions: vehicle positions at ``t``, by vehicle index.
    :param moves: ``vehicle index -> (source, target)`` of moves started at ``t``.
    :param watches: oncoming-traffic watches opened at earlier steps.
    :return: violation message or None, and the watches still open after ``t``.
    """
    edges = instance.graph.edges
    leaving = Counter(move for move in moves.values() if move in edges)

    active = [w for w in watches if w.until >= t]
    for (source, target), count in sorted(leaving.items()):
        attr = edges[(source, target)]
        if count > attr.capacity:
            return f"{count} vehicles enter {source}->{target} at {t}", ()
        if t + attr.length <= instance.horizon:
            waiting = tuple(
                idx
                for idx, p in enumerate(positions)
                if p.kind == AT and p.node == target
            )
            limit = attr.capacity - min(count, attr.capacity)
            if len(waiting) > limit:
                active.append(Watch(source, waiting, limit, t + attr.length))

    for watch in active:
        oncoming = sum(
            1
            for idx in watch.vehicles
            if idx in moves and moves[idx][1] == watch.node
        )
        if oncoming > watch.limit:
            return f"oncoming traffic towards {watch.node} at {t}", ()

    return None, tuple(sorted(w for w in active if w.until > t))
