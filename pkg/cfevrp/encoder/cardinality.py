"""At-most-one / at-most-n constraints over named Boolean variables."""

from typing import Sequence

from pysat.card import CardEnc, EncType
from pysat.formula import IDPool

from cfevrp.encoder.terms import not_, or_


class CardinalityEncoder:
    """
    Cardinality encodings backed by pysat.

    Variable names are interned in one ``IDPool`` so that auxiliary
    counter variables stay unique across every constraint of a model.
    """

    def __init__(self, pairwise_threshold: int = 6, aux_prefix: str = "aux"):
        """
        :param pairwise_threshold: AMO inputs up to this size use the pairwise
            encoding, larger ones the sequential counter.
        :param aux_prefix: name prefix of auxiliary variables.
        """
        self.pool = IDPool()
        self.pairwise_threshold = pairwise_threshold
        self.aux_prefix = aux_prefix
        self.auxiliaries: list[str] = []
        self._aux_seen: set[int] = set()

    def amo_clauses(self, names: Sequence[str]) -> list[list[int]]:
        """Clauses (pysat literals) satisfied iff at most one name is true."""
        if len(names) <= 1:
            return []
        lits = [self.pool.id(name) for name in names]
        encoding = (
            EncType.pairwise
            if len(names) <= self.pairwise_threshold
            else EncType.seqcounter
        )
        return CardEnc.atmost(lits, bound=1, vpool=self.pool, encoding=encoding).clauses

    def amn_clauses(self, names: Sequence[str], n: int) -> list[list[int]]:
        """Clauses (pysat literals) satisfied iff at most ``n`` names are true."""
        if n < 0:
            raise ValueError("bound must be non-negative")
        if n >= len(names):
            return []
        lits = [self.pool.id(name) for name in names]
        if n == 0:
            return [[-lit] for lit in lits]
        return CardEnc.atmost(
            lits, bound=n, vpool=self.pool, encoding=EncType.seqcounter
        ).clauses

    def amo(self, names: Sequence[str]) -> list[str]:
        """AMO rendered as SMT-LIB clauses."""
        return [self.render(clause) for clause in self.amo_clauses(names)]

    def amn(self, names: Sequence[str], n: int) -> list[str]:
        """AMN rendered as SMT-LIB clauses."""
        return [self.render(clause) for clause in self.amn_clauses(names, n)]

    def name_of(self, lit: int) -> str:
        var = abs(lit)
        name = self.pool.obj(var)
        if name is None:
            name = f"{self.aux_prefix}{var}"
            if var not in self._aux_seen:
                self._aux_seen.add(var)
                self.auxiliaries.append(name)
        return name

    def render(self, clause: list[int]) -> str:
        return or_(
            self.name_of(lit) if lit > 0 else not_(self.name_of(lit))
            for lit in clause
        )


def amo(names: Sequence[str], pairwise_threshold: int = 6) -> list[str]:
    """Standalone AMO over ``names`` (fresh auxiliary pool)."""
    return CardinalityEncoder(pairwise_threshold).amo(names)


def amn(names: Sequence[str], n: int) -> list[str]:
    """Standalone AMN over ``names`` (fresh auxiliary pool)."""
    return CardinalityEncoder().amn(names, n)
