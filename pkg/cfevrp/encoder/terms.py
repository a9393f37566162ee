"""SMT-LIB2 term construction (quantifier-free Booleans and linear integers)."""

from typing import Iterable

TRUE = "true"
FALSE = "false"


def num(value: int) -> str:
    return str(value) if value >= 0 else f"(- {-value})"


def not_(term: str) -> str:
    if term == TRUE:
        return FALSE
    if term == FALSE:
        return TRUE
    return f"(not {term})"


def and_(terms: Iterable[str]) -> str:
    parts = []
    for term in terms:
        if term == FALSE:
            return FALSE
        if term != TRUE:
            parts.append(term)
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return f"(and {' '.join(parts)})"


def or_(terms: Iterable[str]) -> str:
    parts = []
    for term in terms:
        if term == TRUE:
            return TRUE
        if term != FALSE:
            parts.append(term)
    if not parts:
        return FALSE
    if len(parts) == 1:
        return parts[0]
    return f"(or {' '.join(parts)})"


def implies(premise: str, conclusion: str) -> str:
    return f"(=> {premise} {conclusion})"


def eq(left: str, right: str) -> str:
    return f"(= {left} {right})"


def le(left: str, right: str) -> str:
    return f"(<= {left} {right})"


def ge(left: str, right: str) -> str:
    return f"(>= {left} {right})"


def add(left: str, right: str) -> str:
    return f"(+ {left} {right})"


def sub(left: str, right: str) -> str:
    return f"(- {left} {right})"


def ite(condition: str, then: str, otherwise: str) -> str:
    return f"(ite {condition} {then} {otherwise})"


def sum_(terms: Iterable[str]) -> str:
    parts = list(terms)
    if not parts:
        return "0"
    if len(parts) == 1:
        return parts[0]
    return f"(+ {' '.join(parts)})"
