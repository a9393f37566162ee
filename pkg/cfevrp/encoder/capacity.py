"""Road segment capacity: families 19-20."""

from itertools import combinations

from cfevrp.db.models.instance import Instance
from cfevrp.encoder.layout import VariableLayout
from cfevrp.encoder.model import Assertion
from cfevrp.encoder.terms import and_, not_


def encode_capacity(instance: Instance, layout: VariableLayout) -> list[Assertion]:
    """
    Simultaneous departures and oncoming traffic on every edge.

    Only minimal violating vehicle subsets are instantiated; larger subsets
    are implied by them. Edges whose capacity reaches the fleet size emit
    nothing.

    :param instance: validated instance.
    :param layout: symbol table built for ``instance``.
    :return: assertions of families 19 and 20.
    """
    out: list[Assertion] = []
    vehicles = instance.vehicle_ids
    horizon = layout.horizon

    for (source, target), attr in instance.graph.edges.items():
        g = attr.capacity
        if g >= len(vehicles):
            continue

        # 19: at most g vehicles leave source for target at the same time
        for t in layout.times:
            for group in combinations(vehicles, g + 1):
                conflict = and_(
                    [layout.at(v, source, t) for v in group]
                    + [layout.move(v, target, t) for v in group]
                )
                out.append(Assertion("19", not_(conflict)))

        # 20: vehicles waiting at target may not enter the edge while it is used
        d = attr.length
        for t in range(horizon - d + 1):
            for a in range(1, g + 1):
                for outgoing in combinations(vehicles, a):
                    rest = [v for v in vehicles if v not in outgoing]
                    for oncoming in combinations(rest, g - a + 1):
                        premise = (
                            [layout.at(v, source, t) for v in outgoing]
                            + [layout.move(v, target, t) for v in outgoing]
                            + [layout.at(v, target, t) for v in oncoming]
                        )
                        for entry in range(t, t + d + 1):
                            conflict = and_(
                                premise + [layout.move(v, source, entry) for v in oncoming]
                            )
                            out.append(Assertion("20", not_(conflict)))

    return out
