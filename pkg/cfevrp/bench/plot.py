import logging
from pathlib import Path
from typing import Optional

import graphviz

from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import Schedule

logger = logging.getLogger(__name__)

GRID_COLUMNS = 5
PALETTE = (
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "cyan4",
)


def _grid_position(index: int) -> str:
    row, col = divmod(index, GRID_COLUMNS)
    return f"{col * 2},{-row * 2}!"


def plot(schedule: Schedule, instance: Instance, svg_path: Optional[Path] = None) -> str:
    """
    Draw the layout with every vehicle's route.

    Depots are double circles, charging stations are filled and hubs are
    boxes. Each segment is drawn once; route legs are colored per vehicle
    and labelled ``vehicle@time``. Layouts whose node count is a multiple of
    the grid width are pinned to grid positions.

    :param schedule: validated schedule.
    :param instance: the instance it solves.
    :param svg_path: also render an SVG there when Graphviz is installed.
    :return: DOT source.
    """
    on_grid = bool(instance.nodes) and len(instance.nodes) % GRID_COLUMNS == 0
    dot = graphviz.Digraph("routes", engine="neato" if on_grid else "dot")
    dot.attr("node", shape="circle", fontsize="10")

    depots = {vehicle.start_node for vehicle in instance.vehicles}
    stations = instance.battery.charging_stations
    for index, node in enumerate(instance.nodes):
        attrs = {}
        if node in depots:
            attrs["shape"] = "doublecircle"
        if instance.graph.is_hub(node):
            attrs["shape"] = "box"
        if node in stations:
            attrs["style"] = "filled"
            attrs["fillcolor"] = "lightgrey"
        if on_grid:
            attrs["pos"] = _grid_position(index)
        dot.node(node, **attrs)

    drawn: set[frozenset[str]] = set()
    for source, target in instance.graph.edges:
        pair = frozenset((source, target))
        if pair in drawn:
            continue
        drawn.add(pair)
        both = (target, source) in instance.graph.edges
        dot.edge(source, target, color="grey", dir="both" if both else "forward")

    for index, (vehicle, timeline) in enumerate(sorted(schedule.vehicles.items())):
        color = PALETTE[index % len(PALETTE)]
        for move in sorted(timeline.moves, key=lambda m: m.time):
            dot.edge(
                move.source,
                move.target,
                color=color,
                fontcolor=color,
                label=f"{vehicle}@{move.time}",
                penwidth="2",
            )

    if svg_path is not None:
        svg_path = Path(svg_path)
        try:
            svg_path.write_bytes(dot.pipe(format="svg"))
        except graphviz.ExecutableNotFound:
            logger.warning("Graphviz binaries not found, skipping %s", svg_path)
    return dot.source
