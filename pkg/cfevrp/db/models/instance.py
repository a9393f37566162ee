"""Instance data model for the conflict-free electric vehicle routing problem."""

from functools import cached_property
from typing import Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator


class EdgeAttr(BaseModel):
    """Length (time-steps) and capacity (vehicles) of a road segment."""

    model_config = ConfigDict(frozen=True)

    length: int = Field(..., ge=1, description="Traversal time in steps")
    capacity: int = Field(..., ge=1, description="Vehicles allowed on the segment")


class Edge(BaseModel):
    """Directed road segment as stored in instance files."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    source: str = Field(..., alias="from")
    target: str = Field(..., alias="to")
    length: int = Field(default=1, ge=1)
    capacity: int = Field(default=1, ge=1)

    @property
    def key(self) -> tuple[str, str]:
        return (self.source, self.target)

    @property
    def attr(self) -> EdgeAttr:
        return EdgeAttr(length=self.length, capacity=self.capacity)


class Graph(BaseModel):
    """Plant layout: nodes, hubs, directed edges and successor sets."""

    model_config = ConfigDict(frozen=True)

    nodes: tuple[str, ...]
    hubs: frozenset[str] = frozenset()
    edges: dict[tuple[str, str], EdgeAttr] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_endpoints(self) -> "Graph":
        known = set(self.nodes)
        if not self.hubs <= known:
            raise ValueError(f"hubs: unknown node(s) {sorted(self.hubs - known)}")
        for source, target in self.edges:
            if source not in known or target not in known:
                raise ValueError(f"edges: unknown node in ({source}, {target})")
        return self

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        """Successor set A_n of every node."""
        successors: dict[str, set[str]] = {node: set() for node in self.nodes}
        for source, target in self.edges:
            successors[source].add(target)
        return {node: frozenset(succ) for node, succ in successors.items()}

    @cached_property
    def digraph(self) -> nx.DiGraph:
        """The layout as a networkx digraph with ``length``/``capacity`` edge data."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        for (source, target), attr in self.edges.items():
            graph.add_edge(source, target, length=attr.length, capacity=attr.capacity)
        return graph

    def is_hub(self, node: str) -> bool:
        return node in self.hubs


def shortest_path_length(graph: Graph, a: str, b: str) -> Optional[int]:
    """
    Length of the shortest directed path from ``a`` to ``b``.

    :param graph: plant layout.
    :param a: source node.
    :param b: target node.
    :return: summed edge length, or None when ``b`` is unreachable.
    """
    try:
        return nx.shortest_path_length(graph.digraph, a, b, weight="length")
    except nx.NetworkXNoPath:
        return None


class Vehicle(BaseModel):
    """A vehicle and the depot it starts from and returns to."""

    model_config = ConfigDict(frozen=True)

    id: str
    start: str

    @property
    def start_node(self) -> str:
        return self.start


class Task(BaseModel):
    """Pickup or delivery with a location, predecessors and a time window."""

    model_config = ConfigDict(frozen=True)

    id: str
    location: str
    predecessors: tuple[str, ...] = ()
    tw: tuple[int, int]

    @property
    def tw_lower(self) -> int:
        return self.tw[0]

    @property
    def tw_upper(self) -> int:
        return self.tw[1]


class Job(BaseModel):
    """Pickup task(s) plus one delivery, executable by the eligible vehicles."""

    model_config = ConfigDict(frozen=True)

    id: str
    eligible: tuple[str, ...]
    tasks: tuple[Task, ...]

    @property
    def eligible_vehicles(self) -> frozenset[str]:
        return frozenset(self.eligible)

    def task(self, task_id: str) -> Task:
        for task in self.tasks:
            if task.id == task_id:
                return task
        raise KeyError(task_id)

    @cached_property
    def precedence(self) -> nx.DiGraph:
        """Predecessor DAG of the job's tasks (edge p -> k when p precedes k)."""
        dag = nx.DiGraph()
        dag.add_nodes_from(task.id for task in self.tasks)
        for task in self.tasks:
            for pred in task.predecessors:
                dag.add_edge(pred, task.id)
        return dag

    @property
    def delivery(self) -> Task:
        """The task every other task of the job transitively precedes."""
        sinks = [t for t in self.tasks if self.precedence.out_degree(t.id) == 0]
        return sinks[0]


class BatteryParams(BaseModel):
    """Operating range, charge/discharge coefficients and charging stations."""

    model_config = ConfigDict(frozen=True)

    operating_range: int = Field(..., ge=0)
    charge: int = Field(..., ge=0)
    discharge: int = Field(..., ge=0)
    stations: tuple[str, ...] = ()

    @property
    def charge_coeff(self) -> int:
        return self.charge

    @property
    def discharge_coeff(self) -> int:
        return self.discharge

    @property
    def charging_stations(self) -> frozenset[str]:
        return frozenset(self.stations)


class Instance(BaseModel):
    """
    Complete problem description.

    Field names follow the instance file format; the horizon and longest
    edge are derived and never stored.
    """

    model_config = ConfigDict(frozen=True)

    nodes: tuple[str, ...]
    hubs: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    vehicles: tuple[Vehicle, ...]
    jobs: tuple[Job, ...] = ()
    battery: BatteryParams
    deadline: int = Field(..., ge=0)

    @cached_property
    def graph(self) -> Graph:
        return Graph(
            nodes=self.nodes,
            hubs=frozenset(self.hubs),
            edges={edge.key: edge.attr for edge in self.edges},
        )

    @property
    def longest_edge(self) -> int:
        """h: the longest road segment (0 without edges)."""
        return max((edge.length for edge in self.edges), default=0)

    @property
    def horizon(self) -> int:
        """T = B + h."""
        return self.deadline + self.longest_edge

    @property
    def vehicle_ids(self) -> tuple[str, ...]:
        return tuple(vehicle.id for vehicle in self.vehicles)

    def vehicle(self, vehicle_id: str) -> Vehicle:
        for vehicle in self.vehicles:
            if vehicle.id == vehicle_id:
                return vehicle
        raise KeyError(vehicle_id)

    def job(self, job_id: str) -> Job:
        for job in self.jobs:
            if job.id == job_id:
                return job
        raise KeyError(job_id)

    @model_validator(mode="after")
    def _check_invariants(self) -> "Instance":
        errors = list(_instance_errors(self))
        if errors:
            raise ValueError("; ".join(errors))
        return self


def _duplicates(values) -> list[str]:
    seen: set[str] = set()
    dups = []
    for value in values:
        if value in seen:
            dups.append(value)
        seen.add(value)
    return dups


def _instance_errors(instance: Instance):
    """Yield ``path: message`` strings for every broken invariant."""
    nodes = set(instance.nodes)
    horizon = instance.horizon

    for dup in _duplicates(instance.nodes):
        yield f"nodes: duplicate node '{dup}'"
    for idx, hub in enumerate(instance.hubs):
        if hub not in nodes:
            yield f"hubs[{idx}]: unknown node '{hub}'"

    for dup in _duplicates(edge.key for edge in instance.edges):
        yield f"edges: duplicate edge {dup}"
    for idx, edge in enumerate(instance.edges):
        for field, node in (("from", edge.source), ("to", edge.target)):
            if node not in nodes:
                yield f"edges[{idx}].{field}: unknown node '{node}'"
        if edge.source == edge.target:
            yield f"edges[{idx}]: self-loop on '{edge.source}'"

    vehicle_ids = set(instance.vehicle_ids)
    for dup in _duplicates(instance.vehicle_ids):
        yield f"vehicles: duplicate vehicle '{dup}'"
    starts: dict[str, str] = {}
    for idx, vehicle in enumerate(instance.vehicles):
        if vehicle.start not in nodes:
            yield f"vehicles[{idx}].start: unknown node '{vehicle.start}'"
            continue
        other = starts.setdefault(vehicle.start, vehicle.id)
        if other != vehicle.id and vehicle.start not in instance.hubs:
            yield (
                f"vehicles[{idx}].start: '{vehicle.start}' shared with vehicle "
                f"'{other}' must be a hub"
            )

    for dup in _duplicates(job.id for job in instance.jobs):
        yield f"jobs: duplicate job '{dup}'"
    for j_idx, job in enumerate(instance.jobs):
        path = f"jobs[{j_idx}]"
        if not job.tasks:
            yield f"{path}.tasks: a job needs at least one task"
            continue
        if not job.eligible:
            yield f"{path}.eligible: no eligible vehicle"
        for vehicle_id in job.eligible:
            if vehicle_id not in vehicle_ids:
                yield f"{path}.eligible: unknown vehicle '{vehicle_id}'"
        task_ids = {task.id for task in job.tasks}
        for dup in _duplicates(task.id for task in job.tasks):
            yield f"{path}.tasks: duplicate task '{dup}'"
        dangling = False
        for k_idx, task in enumerate(job.tasks):
            t_path = f"{path}.tasks[{k_idx}]"
            if task.location not in nodes:
                yield f"{t_path}.location: unknown node '{task.location}'"
            for pred in task.predecessors:
                if pred not in task_ids or pred == task.id:
                    dangling = True
                    yield f"{t_path}.predecessors: unknown task '{pred}'"
            lower, upper = task.tw
            if not 0 <= lower <= upper <= horizon:
                yield (
                    f"{t_path}.tw: window [{lower},{upper}] outside 0..{horizon}"
                )
        if dangling:
            continue
        dag = job.precedence
        if not nx.is_directed_acyclic_graph(dag):
            yield f"{path}.tasks: predecessor relation is cyclic"
            continue
        sinks = [node for node in dag.nodes if dag.out_degree(node) == 0]
        if len(sinks) != 1 or nx.ancestors(dag, sinks[0]) != task_ids - {sinks[0]}:
            yield f"{path}.tasks: exactly one delivery must succeed all pickups"

    for idx, station in enumerate(instance.battery.stations):
        if station not in nodes:
            yield f"battery.stations[{idx}]: unknown node '{station}'"
