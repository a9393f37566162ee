"""Instance to SMT-LIB assertion translation."""

from .assignment import encode_assignment
from .battery import encode_battery
from .capacity import encode_capacity
from .cardinality import CardinalityEncoder, amn, amo
from .encode import EncodeOptions, encode
from .layout import VariableLayout
from .model import FAMILY_LABELS, Assertion, EncodedModel, NamedAssertion
from .movement import encode_movement
from .objective import encode_objective

__all__ = [
    "Assertion",
    "CardinalityEncoder",
    "EncodeOptions",
    "EncodedModel",
    "FAMILY_LABELS",
    "NamedAssertion",
    "VariableLayout",
    "amn",
    "amo",
    "encode",
    "encode_assignment",
    "encode_battery",
    "encode_capacity",
    "encode_movement",
    "encode_objective",
]
