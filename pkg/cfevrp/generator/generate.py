import itertools
import logging
import string
from pathlib import Path
from typing import Iterable, Iterator, Union

import networkx as nx
import numpy as np

from cfevrp.db.dao.artifact_dao import artifact_dao
from cfevrp.db.models.instance import (
    BatteryParams,
    Edge,
    Instance,
    Job,
    Task,
    Vehicle,
)
from cfevrp.exceptions import GenerationError
from cfevrp.generator.spec import GenSpec, InstanceClass

logger = logging.getLogger(__name__)

CONNECTIVITY_RETRIES = 1000
SLACK = (2, 6)
CHARGE_COEFF = (1, 3)
SHARED_JOB = "x1"


def node_name(index: int) -> str:
    """Spreadsheet-style column name: A..Z, AA, AB, ..."""
    name = ""
    index += 1
    while index:
        index, rest = divmod(index - 1, 26)
        name = string.ascii_uppercase[rest] + name
    return name


def grid_graph(columns: int, rows: int) -> nx.DiGraph:
    """Bidirectional unit grid with nodes named in row-major order."""
    graph = nx.DiGraph()
    names = [node_name(i) for i in range(columns * rows)]
    graph.add_nodes_from(names)
    for row in range(rows):
        for col in range(columns):
            here = names[row * columns + col]
            if col + 1 < columns:
                right = names[row * columns + col + 1]
                graph.add_edge(here, right)
                graph.add_edge(right, here)
            if row + 1 < rows:
                below = names[(row + 1) * columns + col]
                graph.add_edge(here, below)
                graph.add_edge(below, here)
    return graph


def remove_edge_pairs(graph: nx.DiGraph, pairs: int, random: np.random.Generator) -> nx.DiGraph:
    """
    Remove ``pairs`` bidirectional segments without breaking strong connectivity.

    :param graph: bidirectional layout.
    :param pairs: number of segment pairs to drop.
    :param random: random number generator.
    :return: reduced copy of ``graph``.
    :raises GenerationError: when no valid removal is found within the retry budget.
    """
    if pairs == 0:
        return graph.copy()
    segments = sorted({tuple(sorted(edge)) for edge in graph.edges})
    for attempt in range(CONNECTIVITY_RETRIES):
        chosen = random.choice(len(segments), size=pairs, replace=False)
        reduced = graph.copy()
        for idx in sorted(chosen):
            a, b = segments[idx]
            reduced.remove_edge(a, b)
            reduced.remove_edge(b, a)
        if nx.is_strongly_connected(reduced):
            logger.debug("Edge removal accepted after %d retries", attempt)
            return reduced
    raise GenerationError(
        f"no connected layout after removing {pairs} pairs in {CONNECTIVITY_RETRIES} tries"
    )


def _vehicle_types(vehicles: int, random: np.random.Generator) -> list[int]:
    # random surjection of vehicles onto ceil(V/2) types
    types = (vehicles + 1) // 2
    assignment = list(range(types)) + [int(t) for t in random.integers(0, types, vehicles - types)]
    return [assignment[int(i)] for i in random.permutation(vehicles)]


def generate(spec: GenSpec) -> Instance:
    """
    Build one random instance.

    The layout is the class grid with unit lengths and capacities minus the
    removed segment pairs. Every vehicle starts at its own depot, and every
    depot is a charging station. Each job is a pickup open over the whole
    horizon followed by a delivery whose window opens at the earliest
    possible arrival; one job accepts every vehicle.

    :param spec: class, edge reduction, deadline and seed.
    :return: validated instance.
    :raises GenerationError: when edge removal keeps disconnecting the layout.
    """
    instance_class: InstanceClass = spec.instance_class
    classes = list(InstanceClass)
    random = np.random.default_rng(
        np.random.SeedSequence(
            [spec.seed, classes.index(instance_class), spec.edge_reduction, spec.deadline]
        )
    )

    columns, rows = instance_class.grid
    layout = remove_edge_pairs(
        grid_graph(columns, rows), instance_class.removed_pairs(spec.edge_reduction), random
    )
    nodes = list(layout.nodes)
    horizon = spec.deadline + 1
    distance = dict(nx.all_pairs_shortest_path_length(layout))

    depots = [nodes[int(i)] for i in random.choice(len(nodes), instance_class.vehicles, replace=False)]
    vehicles = [Vehicle(id=node_name(i).lower(), start=depot) for i, depot in enumerate(depots)]
    types = _vehicle_types(len(vehicles), random)

    jobs = []
    round_trips = []
    for j in range(instance_class.jobs):
        shared = j == instance_class.jobs - 1
        if shared:
            eligible = [v.id for v in vehicles]
            job_id = SHARED_JOB
        else:
            wanted = int(random.integers(0, max(types) + 1))
            eligible = [v.id for v, kind in zip(vehicles, types) if kind == wanted]
            job_id = str(j + 1)
        pickup, delivery = (nodes[int(i)] for i in random.choice(len(nodes), 2, replace=False))
        starts = [v.start for v in vehicles if v.id in eligible]

        arrival = min(distance[s][pickup] for s in starts) + distance[pickup][delivery]
        round_trips.append(
            min(distance[s][pickup] + distance[pickup][delivery] + distance[delivery][s] for s in starts)
        )
        lower = min(arrival, horizon)
        upper = min(lower + int(random.integers(SLACK[0], SLACK[1] + 1)), horizon)
        jobs.append(
            Job(
                id=job_id,
                eligible=tuple(eligible),
                tasks=(
                    Task(id="pickup", location=pickup, tw=(0, horizon)),
                    Task(id="delivery", location=delivery, predecessors=("pickup",), tw=(lower, upper)),
                ),
            )
        )

    needed = max(round_trips, default=1)
    battery = BatteryParams(
        operating_range=int(random.integers(needed, 2 * needed + 1)),
        charge=int(random.integers(CHARGE_COEFF[0], CHARGE_COEFF[1] + 1)),
        discharge=1,
        stations=tuple(sorted(depots)),
    )

    return Instance(
        nodes=tuple(nodes),
        edges=tuple(Edge(source=a, target=b) for a, b in sorted(layout.edges)),
        vehicles=tuple(vehicles),
        jobs=tuple(jobs),
        battery=battery,
        deadline=spec.deadline,
    )


def iter_suite_specs(
    classes: Iterable[InstanceClass],
    reductions: Iterable[int],
    deadlines: Iterable[int],
    seeds: Union[int, Iterable[int]],
) -> Iterator[GenSpec]:
    """
    Cross product of the parameter lists.

    :param seeds: seeds per cell (``0 .. seeds-1``) or the seed values themselves.
    """
    seed_values = range(seeds) if isinstance(seeds, int) else tuple(seeds)
    for instance_class, reduction, deadline in itertools.product(classes, reductions, deadlines):
        for seed in seed_values:
            yield GenSpec(
                instance_class=instance_class,
                edge_reduction=reduction,
                deadline=deadline,
                seed=seed,
            )


def generate_suite(
    out_dir: Path,
    classes: Iterable[InstanceClass],
    reductions: Iterable[int],
    deadlines: Iterable[int],
    seeds: Union[int, Iterable[int]],
) -> list[Path]:
    """
    Write one instance file per cell and seed plus a ``manifest.json``.

    :return: paths of the written instance files.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for spec in iter_suite_specs(classes, reductions, deadlines, seeds):
        path = out_dir / spec.file_name
        artifact_dao.save_instance(generate(spec), path)
        logger.info("Generated %s", path)
        written.append(path)
    artifact_dao.save_manifest([path.name for path in written], out_dir / "manifest.json")
    return written
