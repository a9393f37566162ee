from cfevrp.backend.emit import bound_assertion, emit_smtlib, fixing_assertions, value_symbols
from cfevrp.db.models.instance import Instance
from cfevrp.db.models.solver import SolverModel
from cfevrp.encoder.encode import encode
from cfevrp.encoder.model import EncodedModel
from cfevrp.settings import SolveMode


def test_satisfy_script_layout(line: Instance) -> None:
    encoded = encode(line)
    lines = emit_smtlib(encoded).splitlines()
    assert lines[0] == "(set-option :produce-models true)"
    assert lines[1] == "(set-option :produce-unsat-cores true)"
    assert lines[2] == "(set-logic QF_LIA)"
    assert lines[-4] == "(check-sat)"
    assert lines[-3].startswith("(get-value (")
    assert lines[-2] == "(get-unsat-core)"
    assert lines[-1] == "(exit)"
    named = [item for item in lines if item.startswith("(assert (! ")]
    assert len(named) == encoded.assertion_count
    assert all(":named f" in item for item in named)


def test_declarations_precede_assertions(line: Instance) -> None:
    lines = emit_smtlib(encode(line)).splitlines()
    last_declaration = max(i for i, item in enumerate(lines) if item.startswith("(declare-const") or item.startswith("(define-fun"))
    first_assertion = min(i for i, item in enumerate(lines) if item.startswith("(assert"))
    assert last_declaration < first_assertion


def test_native_mode_minimizes_without_core(line: Instance) -> None:
    script = emit_smtlib(encode(line), SolveMode.OPTIMIZE_NATIVE)
    assert "(minimize total_cost)" in script
    assert "produce-unsat-cores" not in script
    assert "(get-unsat-core)" not in script
    assert script.index("(minimize total_cost)") < script.index("(check-sat)")


def test_random_seed_option(line: Instance) -> None:
    script = emit_smtlib(encode(line), random_seed=7)
    assert "(set-option :random-seed 7)" in script


def test_extra_assertions_are_unnamed_and_last(line: Instance) -> None:
    encoded = encode(line)
    script = emit_smtlib(encoded, SolveMode.OPTIMIZE_BOUND_SEARCH, extra=[bound_assertion(encoded, 3)])
    lines = script.splitlines()
    bound = lines.index("(assert (<= total_cost 3))")
    assert all(not item.startswith("(assert") for item in lines[bound + 1 :])


def test_empty_model_is_check_sat_only() -> None:
    empty = EncodedModel(declarations=[], assertions=[], objective="total_cost")
    assert emit_smtlib(empty) == "(check-sat)\n(exit)\n"


def test_value_symbols_cover_every_primary_variable(line: Instance) -> None:
    encoded = encode(line)
    symbols = value_symbols(encoded)
    assert "total_cost" in symbols
    assert "rc_v0_t0" in symbols
    assert "at_v0_n0_t0" in symbols
    assert not any(name.startswith("aux") for name in symbols)


def test_fixing_assertions() -> None:
    model = SolverModel(booleans={"p": True, "q": False}, integers={"n": -2})
    assert fixing_assertions(model) == ["p", "(not q)", "(= n (- 2))"]


def test_emit_is_deterministic(fig1: Instance) -> None:
    assert emit_smtlib(encode(fig1), random_seed=1) == emit_smtlib(encode(fig1), random_seed=1)
