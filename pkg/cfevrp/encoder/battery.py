"""Battery charge: families 21-24."""

from cfevrp.db.models.instance import Instance
from cfevrp.encoder.layout import VariableLayout
from cfevrp.encoder.model import Assertion
from cfevrp.encoder.terms import add, and_, eq, ge, implies, le, num, sub


def encode_battery(instance: Instance, layout: VariableLayout) -> list[Assertion]:
    """
    Charge domain, discharge while driving, charging while parked.

    A traversal of an edge of length ``d`` departing at ``t`` discharges at
    steps ``t+1 .. t+d``. Every vehicle starts with a full battery.

    :param instance: validated instance.
    :param layout: symbol table built for ``instance``.
    :return: assertions of families 21-24.
    """
    out: list[Assertion] = []
    battery = instance.battery
    full = num(battery.operating_range)
    discharge = num(battery.discharge_coeff)
    charge = num(battery.charge_coeff)
    stations = battery.charging_stations
    vehicles = instance.vehicle_ids
    horizon = layout.horizon

    for vehicle in vehicles:
        out.append(Assertion("21", eq(layout.rc(vehicle, 0), full)))
        for t in layout.times:
            rc = layout.rc(vehicle, t)
            out.append(Assertion("21", and_([ge(rc, "0"), le(rc, full)])))

    for vehicle in vehicles:
        for (source, target), attr in instance.graph.edges.items():
            d = attr.length
            for t in range(horizon - d + 1):
                departs = and_(
                    [layout.at(vehicle, source, t), layout.move(vehicle, target, t)]
                )
                drain = and_(
                    eq(layout.rc(vehicle, step), sub(layout.rc(vehicle, step - 1), discharge))
                    for step in range(t + 1, t + d + 1)
                )
                out.append(Assertion("22", implies(departs, drain)))

    for vehicle in vehicles:
        for node in instance.nodes:
            family = "24" if node in stations else "23"
            for t in range(horizon):
                parked = and_([layout.at(vehicle, node, t), layout.idle(vehicle, t)])
                current = layout.rc(vehicle, t)
                following = current if family == "23" else add(current, charge)
                out.append(
                    Assertion(
                        family, implies(parked, eq(layout.rc(vehicle, t + 1), following))
                    )
                )

    return out
