"""
Tolerant reader for SMT solver output.

Accepts the status line, ``get-value`` responses, ``(model ...)`` /
``define-fun`` model syntax, ``(error ...)`` forms and unsat cores, in any
order and with arbitrary whitespace.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

from cfevrp.db.models.solver import SolverModel, SolverStatus
from cfevrp.exceptions import SolverOutputError

SExpr = Union[str, list["SExpr"]]

STATUS_WORDS = {status.value: status for status in SolverStatus}
# Answers to queries that do not apply to the status (values after unsat, core after sat).
NOT_AVAILABLE = ("not available", "not enabled", "model is not", "unsat core is not")


def tokenize(text: str) -> list[str]:
    tokens = []
    i, size = 0, len(text)
    while i < size:
        char = text[i]
        if char.isspace():
            i += 1
        elif char == ";":
            end = text.find("\n", i)
            i = size if end < 0 else end
        elif char in "()":
            tokens.append(char)
            i += 1
        elif char == '"':
            j = i + 1
            while j < size:
                if text[j] == '"':
                    if j + 1 < size and text[j + 1] == '"':
                        j += 2
                        continue
                    break
                j += 1
            tokens.append(text[i : j + 1])
            i = j + 1
        elif char == "|":
            end = text.find("|", i + 1)
            end = size - 1 if end < 0 else end
            tokens.append(text[i + 1 : end])
            i = end + 1
        else:
            j = i
            while j < size and not text[j].isspace() and text[j] not in '();"':
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def parse_sexprs(text: str) -> list[SExpr]:
    """
    Parse every top-level s-expression of ``text``.

    :raises SolverOutputError: on unbalanced parentheses.
    """
    stack: list[list[SExpr]] = [[]]
    for token in tokenize(text):
        if token == "(":
            stack.append([])
        elif token == ")":
            if len(stack) == 1:
                raise SolverOutputError("unbalanced ')' in solver output", text)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(token)
    if len(stack) != 1:
        raise SolverOutputError("unterminated '(' in solver output", text)
    return stack[0]


def _value(expr: SExpr) -> Optional[Union[bool, int]]:
    if expr == "true":
        return True
    if expr == "false":
        return False
    if isinstance(expr, str):
        try:
            return int(expr)
        except ValueError:
            return None
    if len(expr) == 2 and expr[0] == "-":
        inner = _value(expr[1])
        if isinstance(inner, int) and not isinstance(inner, bool):
            return -inner
    return None


def _unquote(text: str) -> str:
    if len(text) >= 2 and text[0] == text[-1] == '"':
        return text[1:-1].replace('""', '"')
    return text


@dataclass
class SolverReply:
    """Everything recognised in one solver transcript."""

    status: Optional[SolverStatus] = None
    model: SolverModel = field(default_factory=SolverModel)
    unsat_core: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    reason_unknown: Optional[str] = None

    def bind(self, name: str, value: Union[bool, int]) -> None:
        if isinstance(value, bool):
            self.model.booleans[name] = value
        else:
            self.model.integers[name] = value


def _is_binding(expr: SExpr) -> bool:
    return isinstance(expr, list) and len(expr) == 2 and isinstance(expr[0], str)


def _read_definitions(reply: SolverReply, forms: list[SExpr]) -> None:
    # (define-fun name () Sort value)
    for form in forms:
        if (
            isinstance(form, list)
            and len(form) == 5
            and form[0] == "define-fun"
            and form[2] == []
        ):
            value = _value(form[4])
            if value is not None:
                reply.bind(str(form[1]), value)


def read_reply(text: str) -> SolverReply:
    """
    Interpret a solver transcript.

    :param text: stdout of the solver.
    :return: status, values, unsat core and error messages found.
    :raises SolverOutputError: when the text is not s-expression shaped.
    """
    reply = SolverReply()
    for form in parse_sexprs(text):
        if isinstance(form, str):
            if form in STATUS_WORDS:
                reply.status = reply.status or STATUS_WORDS[form]
            elif form in ("success", "unsupported"):
                continue
            else:
                raise SolverOutputError(f"unexpected token '{form}'", text)
            continue

        if form and form[0] == "error":
            message = " ".join(_unquote(str(part)) for part in form[1:])
            if not any(marker in message for marker in NOT_AVAILABLE):
                reply.errors.append(message)
        elif form and form[0] == "model":
            _read_definitions(reply, form[1:])
        elif form and form[0] == "objectives":
            continue
        elif form and form[0] == ":reason-unknown":
            reply.reason_unknown = _unquote(str(form[1])) if len(form) > 1 else None
        elif form and all(isinstance(item, list) and item and item[0] == "define-fun" for item in form):
            _read_definitions(reply, form)
        elif form and all(_is_binding(item) for item in form):
            for name, raw in form:
                value = _value(raw)
                if value is None:
                    raise SolverOutputError(f"cannot read value of '{name}'", text)
                reply.bind(name, value)
        elif all(isinstance(item, str) for item in form):
            if reply.status == SolverStatus.UNSAT:
                reply.unsat_core = [str(item) for item in form]
        else:
            raise SolverOutputError("unrecognised form in solver output", text)
    return reply
