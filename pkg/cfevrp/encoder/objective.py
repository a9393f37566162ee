"""Travelled distance: family 25."""

from cfevrp.db.models.instance import Instance
from cfevrp.encoder.layout import VariableLayout
from cfevrp.encoder.terms import and_, ite, num, sum_


def encode_objective(instance: Instance, layout: VariableLayout) -> str:
    """
    Sum of edge lengths over every departure ``at(n) & move(n')`` at ``t < T``.

    :param instance: validated instance.
    :param layout: symbol table built for ``instance``.
    :return: linear integer term, ``0`` without edges.
    """
    return sum_(
        ite(
            and_([layout.at(vehicle, source, t), layout.move(vehicle, target, t)]),
            num(attr.length),
            "0",
        )
        for vehicle in instance.vehicle_ids
        for (source, target), attr in instance.graph.edges.items()
        for t in range(layout.horizon)
    )
