import pytest
from pydantic import ValidationError

from cfevrp.settings import Settings, split_solver_args


@pytest.mark.parametrize("value", ["-smt2,-in", "-smt2 -in", " -smt2, -in ", ["-smt2", "-in"]])
def test_split_solver_args(value) -> None:
    assert split_solver_args(value) == ["-smt2", "-in"]


def test_empty_solver_args() -> None:
    assert split_solver_args("") == []


def test_solver_args_from_constructor() -> None:
    assert Settings(solver_args="-smt2 -in -T:5").solver_args == ["-smt2", "-in", "-T:5"]


def test_solver_args_rejects_numbers() -> None:
    with pytest.raises(ValidationError):
        Settings(solver_args=5)
