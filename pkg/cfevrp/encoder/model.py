"""Encoded model containers."""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from cfevrp.encoder.layout import VariableLayout

# Constraint family labels in emission order.
FAMILY_LABELS: tuple[str, ...] = tuple(str(n) for n in range(1, 26)) + (
    "cover",
    "channel",
)


class Assertion(NamedTuple):
    """A formula tagged with the constraint family it instantiates."""

    family: str
    term: str


class NamedAssertion(NamedTuple):
    name: str
    family: str
    term: str


@dataclass
class EncodedModel:
    """Declarations, named assertions and objective of one instance."""

    declarations: list[str]
    assertions: list[NamedAssertion]
    objective: str
    layout: Optional[VariableLayout] = None
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def assertion_count(self) -> int:
        return len(self.assertions)

    def family(self, label: str) -> list[NamedAssertion]:
        return [item for item in self.assertions if item.family == label]


def name_assertions(assertions: list[Assertion]) -> list[NamedAssertion]:
    """Attach ``f<family>_<seq>`` names, numbering each family from 0."""
    counters: dict[str, int] = {}
    named = []
    for family, term in assertions:
        seq = counters.get(family, 0)
        counters[family] = seq + 1
        named.append(NamedAssertion(f"f{family}_{seq}", family, term))
    return named


def count_families(assertions: list[NamedAssertion]) -> dict[str, int]:
    stats = {label: 0 for label in FAMILY_LABELS}
    for item in assertions:
        stats[item.family] += 1
    return stats
