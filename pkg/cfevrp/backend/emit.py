"""SMT-LIB2 document emission."""

from typing import Iterable, Optional

from cfevrp.db.models.solver import SolverModel
from cfevrp.encoder.model import EncodedModel
from cfevrp.encoder.terms import eq, le, not_, num
from cfevrp.settings import SolveMode


def value_symbols(model: EncodedModel) -> list[str]:
    """Variables whose values are read back after a sat answer."""
    if model.layout is None:
        return []
    return model.layout.boolean_variables() + model.layout.integer_variables()


def bound_assertion(model: EncodedModel, bound: int) -> str:
    return le(model.objective, num(bound))


def fixing_assertions(values: SolverModel) -> list[str]:
    """Unit assertions pinning every variable to its value in ``values``."""
    terms = [name if value else not_(name) for name, value in values.booleans.items()]
    terms.extend(eq(name, num(value)) for name, value in values.integers.items())
    return terms


def emit_smtlib(
    model: EncodedModel,
    mode: SolveMode = SolveMode.SATISFY,
    extra: Iterable[str] = (),
    random_seed: Optional[int] = None,
) -> str:
    """
    Render a complete SMT-LIB2 script.

    :param model: encoded instance.
    :param mode: satisfy also asks for an unsat core; optimize-native adds
        a minimization directive on the objective.
    :param extra: unnamed assertions appended after the model (bounds, fixings).
    :param random_seed: passed through as ``:random-seed``.
    :return: script ending with ``(check-sat)`` and the value queries.
    """
    lines = []
    if model.assertions or model.declarations:
        lines.append("(set-option :produce-models true)")
        if mode == SolveMode.SATISFY:
            lines.append("(set-option :produce-unsat-cores true)")
        if random_seed is not None:
            lines.append(f"(set-option :random-seed {random_seed})")
        lines.append("(set-logic QF_LIA)")
        lines.extend(model.declarations)
        lines.extend(
            f"(assert (! {item.term} :named {item.name}))" for item in model.assertions
        )
        lines.extend(f"(assert {term})" for term in extra)
        if mode == SolveMode.OPTIMIZE_NATIVE:
            lines.append(f"(minimize {model.objective})")
    lines.append("(check-sat)")
    symbols = value_symbols(model)
    if symbols:
        lines.append(f"(get-value ({' '.join(symbols)}))")
    if mode == SolveMode.SATISFY and model.assertions:
        lines.append("(get-unsat-core)")
    lines.append("(exit)")
    return "\n".join(lines) + "\n"
