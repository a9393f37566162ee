import logging
from typing import Optional

from pydantic import BaseModel, Field

from cfevrp.db.models.instance import Instance
from cfevrp.encoder.assignment import encode_assignment
from cfevrp.encoder.battery import encode_battery
from cfevrp.encoder.capacity import encode_capacity
from cfevrp.encoder.layout import VariableLayout
from cfevrp.encoder.model import (
    Assertion,
    EncodedModel,
    count_families,
    name_assertions,
)
from cfevrp.encoder.movement import encode_movement
from cfevrp.encoder.objective import encode_objective
from cfevrp.encoder.terms import eq
from cfevrp.settings import settings

logger = logging.getLogger(__name__)


class EncodeOptions(BaseModel):
    """Knobs of one encoding run."""

    include_capacity: bool = True
    pairwise_threshold: int = Field(default_factory=lambda: settings.pairwise_threshold)


def encode(instance: Instance, options: Optional[EncodeOptions] = None) -> EncodedModel:
    """
    Translate an instance into its complete assertion set.

    The result is a pure function of ``instance`` and ``options``.

    :param instance: validated instance.
    :param options: encoding options; defaults come from settings.
    :return: declarations, named assertions, objective and per-family stats.
    """
    options = options or EncodeOptions()
    layout = VariableLayout(instance, options.pairwise_threshold)

    assertions: list[Assertion] = []
    assertions.extend(encode_assignment(instance, layout))
    assertions.extend(encode_movement(instance, layout))
    if options.include_capacity:
        assertions.extend(encode_capacity(instance, layout))
    assertions.extend(encode_battery(instance, layout))
    assertions.append(Assertion("25", eq(layout.cost, encode_objective(instance, layout))))

    named = name_assertions(assertions)
    stats = count_families(named)
    logger.debug(
        "Encoded %d assertions: %s",
        len(named),
        ", ".join(f"{family}={count}" for family, count in stats.items() if count),
    )
    return EncodedModel(
        declarations=layout.declarations(),
        assertions=named,
        objective=layout.cost,
        layout=layout,
        stats=stats,
    )
