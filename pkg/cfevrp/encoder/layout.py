"""Symbol table of an encoding: variable names, auxiliaries and macros."""

from cfevrp.db.models.instance import Instance
from cfevrp.encoder.cardinality import CardinalityEncoder
from cfevrp.encoder.terms import FALSE, and_, not_, or_

COST = "total_cost"


class VariableLayout:
    """
    Maps (vehicle, job, task, node, time) indices to SMT variable names.

    Names are built from positions in the instance lists, never from user
    ids, so arbitrary ids cannot collide or break SMT-LIB syntax.
    Auxiliary cardinality variables and ``define-fun`` macros created
    while encoding are registered here as well.
    """

    def __init__(self, instance: Instance, pairwise_threshold: int = 6):
        self.instance = instance
        self.horizon = instance.horizon
        self.cardinality = CardinalityEncoder(pairwise_threshold)

        self._vehicle = {v.id: idx for idx, v in enumerate(instance.vehicles)}
        self._node = {node: idx for idx, node in enumerate(instance.nodes)}
        self._job = {job.id: idx for idx, job in enumerate(instance.jobs)}
        self._task = {
            job.id: {task.id: idx for idx, task in enumerate(job.tasks)}
            for job in instance.jobs
        }
        self._macros: dict[str, str] = {}

    @property
    def times(self) -> range:
        return range(self.horizon + 1)

    def x(self, vehicle: str, job: str) -> str:
        return f"x_v{self._vehicle[vehicle]}_j{self._job[job]}"

    def y(self, vehicle: str, job: str, task: str) -> str:
        return (
            f"y_v{self._vehicle[vehicle]}_j{self._job[job]}"
            f"_k{self._task[job][task]}"
        )

    def z(self, vehicle: str, job: str, task: str, t: int) -> str:
        return (
            f"z_v{self._vehicle[vehicle]}_j{self._job[job]}"
            f"_k{self._task[job][task]}_t{t}"
        )

    def at(self, vehicle: str, node: str, t: int) -> str:
        return f"at_v{self._vehicle[vehicle]}_n{self._node[node]}_t{t}"

    def move(self, vehicle: str, node: str, t: int) -> str:
        return f"mv_v{self._vehicle[vehicle]}_n{self._node[node]}_t{t}"

    def rc(self, vehicle: str, t: int) -> str:
        return f"rc_v{self._vehicle[vehicle]}_t{t}"

    @property
    def cost(self) -> str:
        return COST

    def idle(self, vehicle: str, t: int) -> str:
        """Macro: the vehicle starts no move at ``t``."""
        name = f"idle_v{self._vehicle[vehicle]}_t{t}"
        if name not in self._macros:
            self._macros[name] = and_(
                not_(self.move(vehicle, node, t)) for node in self.instance.nodes
            )
        return name

    def other_job_served(self, vehicle: str, job: str, t: int) -> str:
        """Macro: the vehicle serves some task of a job other than ``job`` at ``t``."""
        name = f"ob_v{self._vehicle[vehicle]}_j{self._job[job]}_t{t}"
        if name not in self._macros:
            body = or_(
                self.z(vehicle, other.id, task.id, t)
                for other in self.instance.jobs
                if other.id != job
                for task in other.tasks
            )
            if body == FALSE:
                return FALSE
            self._macros[name] = body
        return name

    def boolean_variables(self) -> list[str]:
        """Every primary Boolean variable, in declaration order."""
        names = []
        vehicles = self.instance.vehicle_ids
        for vehicle in vehicles:
            for job in self.instance.jobs:
                names.append(self.x(vehicle, job.id))
                for task in job.tasks:
                    names.append(self.y(vehicle, job.id, task.id))
                    names.extend(self.z(vehicle, job.id, task.id, t) for t in self.times)
        for vehicle in vehicles:
            for node in self.instance.nodes:
                names.extend(self.at(vehicle, node, t) for t in self.times)
                names.extend(self.move(vehicle, node, t) for t in self.times)
        return names

    def integer_variables(self) -> list[str]:
        names = [
            self.rc(vehicle, t) for vehicle in self.instance.vehicle_ids for t in self.times
        ]
        names.append(COST)
        return names

    def declarations(self) -> list[str]:
        """``declare-const`` and ``define-fun`` commands for every symbol."""
        lines = [f"(declare-const {name} Bool)" for name in self.boolean_variables()]
        lines.extend(f"(declare-const {name} Int)" for name in self.integer_variables())
        lines.extend(
            f"(declare-const {name} Bool)" for name in self.cardinality.auxiliaries
        )
        lines.extend(
            f"(define-fun {name} () Bool {body})" for name, body in self._macros.items()
        )
        return lines
