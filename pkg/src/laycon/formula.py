"""Rectilinear monotone 3-SAT formulas: the input of the hardness generator.

A formula lists its variables left to right and its clauses with a polarity
(positive clauses are drawn above the variable row, negative ones below) and a
nesting depth. Legs of same-side clauses must not cross, which for a
rectilinear layout means that two clause spans are disjoint or nested, with
the deeper clause outside.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

POSITIVE = "positive"
NEGATIVE = "negative"
POLARITIES = (POSITIVE, NEGATIVE)


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Clause:
    literals: tuple[str, ...]
    polarity: str
    depth: int

    def __init__(self, literals: Sequence[str], polarity: str, depth: int) -> None:
        object.__setattr__(self, "literals", tuple(literals))
        object.__setattr__(self, "polarity", polarity)
        object.__setattr__(self, "depth", depth)

    def satisfied(self, assignment: Mapping[str, bool]) -> bool:
        want = self.polarity == POSITIVE
        return any(assignment[x] == want for x in self.literals)


@dataclass(frozen=True)
class RectilinearFormula:
    variables: tuple[str, ...]
    clauses: tuple[Clause, ...]

    def __init__(self, variables: Sequence[str], clauses: Sequence[Clause]) -> None:
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "clauses", tuple(clauses))

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def span(self, c: Clause) -> tuple[int, int]:
        return self.index(c.literals[0]), self.index(c.literals[-1])

    def check_assignment(self, assignment: Mapping[str, bool]) -> None:
        missing = [x for x in self.variables if x not in assignment]
        if missing:
            raise FormulaError(f"assignment misses variables {missing}")

    def unsatisfied(self, assignment: Mapping[str, bool]) -> int:
        self.check_assignment(assignment)
        return sum(not c.satisfied(assignment) for c in self.clauses)

    def assignments(self):
        """All assignments in binary counting order (first variable slowest)."""
        for bits in itertools.product((False, True), repeat=len(self.variables)):
            yield dict(zip(self.variables, bits))

    def satisfiable(self) -> bool:
        if len(self.variables) > 20:
            raise FormulaError("truth-table satisfiability is limited to 20 variables")
        return any(self.unsatisfied(a) == 0 for a in self.assignments())

    def validate(self) -> None:
        """Raise FormulaError unless the formula is a well-formed rectilinear layout."""
        if len(set(self.variables)) != len(self.variables):
            raise FormulaError("duplicate variable names")
        if not self.variables:
            raise FormulaError("formula has no variables")
        for n, c in enumerate(self.clauses):
            where = f"clause {n}"
            if c.polarity not in POLARITIES:
                raise FormulaError(f"{where}: polarity must be one of {POLARITIES}")
            if not 1 <= len(c.literals) <= 3:
                raise FormulaError(f"{where}: needs 1 to 3 literals")
            if isinstance(c.depth, bool) or not isinstance(c.depth, int) or c.depth < 1:
                raise FormulaError(f"{where}: depth must be an integer >= 1")
            for x in c.literals:
                if x not in self.variables:
                    raise FormulaError(f"{where}: unknown variable {x!r}")
            cols = [self.index(x) for x in c.literals]
            if any(b <= a for a, b in zip(cols, cols[1:])):
                raise FormulaError(f"{where}: literal columns must be strictly increasing")
        for (n, p), (m, q) in itertools.combinations(enumerate(self.clauses), 2):
            if p.polarity != q.polarity:
                continue
            self._check_pair(n, p, m, q)

    def _check_pair(self, n: int, p: Clause, m: int, q: Clause) -> None:
        (a, b), (c, d) = self.span(p), self.span(q)
        if b < c or d < a:
            return
        if p.depth == q.depth:
            raise FormulaError(f"clauses {n} and {m}: overlapping spans at equal depth")
        inner, outer = (p, q) if p.depth < q.depth else (q, p)
        (ia, ib), (oa, ob) = self.span(inner), self.span(outer)
        if not (oa <= ia and ib <= ob):
            raise FormulaError(f"clauses {n} and {m}: legs cross (spans neither disjoint nor nested)")
        for x in outer.literals:
            if ia < self.index(x) < ib:
                raise FormulaError(f"clauses {n} and {m}: a leg of the outer clause passes through the inner one")

    def legs(self, variable: str, polarity: str) -> list[int]:
        """Indices of the same-side clauses using ``variable``, ordered left to right."""
        x = self.index(variable)
        mine = [n for n, c in enumerate(self.clauses) if c.polarity == polarity and variable in c.literals]

        def left_of(n: int, m: int) -> int:
            p, q = self.clauses[n], self.clauses[m]
            inner, outer, sign = (p, q, 1) if p.depth < q.depth else (q, p, -1)
            oa, ob = self.span(outer)
            ia, ib = self.span(inner)
            if oa < ob and x == ob:
                inner_left = True
            elif oa < ob and x == oa:
                inner_left = False
            else:
                # outer leg in the middle: the inner clause sits on its own side
                inner_left = not (ia == x and ia < ib)
            return -sign if inner_left else sign

        return sorted(mine, key=functools.cmp_to_key(left_of))
