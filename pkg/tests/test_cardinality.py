import itertools

import pytest
from pysat.solvers import Solver

from cfevrp.encoder.cardinality import CardinalityEncoder, amn, amo


def _projection_matches(encoder: CardinalityEncoder, names: list[str], clauses, bound: int) -> None:
    lits = [encoder.pool.id(name) for name in names]
    with Solver(name="g3") as solver:
        for lit in lits:
            solver.add_clause([lit, -lit])
        for clause in clauses:
            solver.add_clause(clause)
        for values in itertools.product((False, True), repeat=len(names)):
            assumptions = [lit if value else -lit for lit, value in zip(lits, values)]
            assert solver.solve(assumptions=assumptions) == (sum(values) <= bound), values


@pytest.mark.parametrize("size", range(0, 6))
@pytest.mark.parametrize("threshold", [1, 6])
def test_amo_projection_is_exact(size: int, threshold: int) -> None:
    encoder = CardinalityEncoder(pairwise_threshold=threshold)
    names = [f"p{i}" for i in range(size)]
    _projection_matches(encoder, names, encoder.amo_clauses(names), 1)


@pytest.mark.parametrize("size", range(0, 6))
def test_amn_projection_is_exact(size: int) -> None:
    for bound in range(0, size + 1):
        encoder = CardinalityEncoder()
        names = [f"p{i}" for i in range(size)]
        _projection_matches(encoder, names, encoder.amn_clauses(names, bound), bound)


def test_amo_of_single_name_is_empty() -> None:
    assert amo(["p"]) == []
    assert amo([]) == []


def test_amo_pairwise_below_threshold() -> None:
    assert amo(["p", "q", "r"]) == [
        "(or (not p) (not q))",
        "(or (not p) (not r))",
        "(or (not q) (not r))",
    ]


def test_amo_counter_registers_auxiliaries() -> None:
    encoder = CardinalityEncoder(pairwise_threshold=2)
    clauses = encoder.amo([f"p{i}" for i in range(4)])
    assert clauses
    assert encoder.auxiliaries
    assert all(name.startswith("aux") for name in encoder.auxiliaries)
    assert any(aux in clause for clause in clauses for aux in encoder.auxiliaries)


def test_amn_zero_negates_every_name() -> None:
    assert amn(["p", "q"], 0) == ["(not p)", "(not q)"]


def test_amn_at_size_is_empty() -> None:
    assert amn(["p", "q"], 2) == []
    assert amn(["p", "q"], 5) == []


def test_amn_negative_bound_rejected() -> None:
    with pytest.raises(ValueError):
        amn(["p"], -1)


def test_auxiliaries_unique_across_constraints() -> None:
    encoder = CardinalityEncoder(pairwise_threshold=1)
    encoder.amo(["a", "b", "c"])
    first = list(encoder.auxiliaries)
    encoder.amn(["d", "e", "f"], 1)
    assert len(encoder.auxiliaries) == len(set(encoder.auxiliaries))
    assert encoder.auxiliaries[: len(first)] == first
    assert len(encoder.auxiliaries) > len(first)
