"""Satisfiability and 3-Satisfiability.

The universe is the literal set ``L = {x_1, ¬x_1, ..., x_n, ¬x_n}`` and a
solution picks exactly one literal per variable such that every clause
contains a picked literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ssplift.core import Budget, ElementId, KindSpec, ParseError, ProblemKind, register
from ssplift.problems._common import lit, parse_int


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, num_vars: int, clauses) -> "CnfFormula":
        return cls(num_vars, tuple(tuple(c) for c in clauses))


def assignment_literals(assignment: dict[int, bool] | list[bool], num_vars: int) -> frozenset[ElementId]:
    """Literal set of a total assignment (``assignment[v]`` for v = 1..n)."""
    if isinstance(assignment, list):
        values = {v: assignment[v - 1] for v in range(1, num_vars + 1)}
    else:
        values = assignment
    return frozenset(lit(v if values[v] else -v) for v in range(1, num_vars + 1))


def iter_models(formula: CnfFormula, budget: Budget) -> Iterator[list[bool]]:
    """Backtracking over variables 1..n, pruning falsified clauses early."""
    n = formula.num_vars
    # clauses indexed by the largest variable they mention
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for c in formula.clauses:
        if not c:
            return
        by_last[max(abs(l) for l in c)].append(c)
    values = [False] * (n + 1)

    def rec(v: int) -> Iterator[list[bool]]:
        budget.tick()
        if v > n:
            yield values[1:]
            return
        for val in (True, False):
            values[v] = val
            if all(any(values[abs(l)] == (l > 0) for l in c) for c in by_last[v]):
                yield from rec(v + 1)

    yield from rec(1)


class SatSpec(KindSpec):
    kind = ProblemKind.SATISFIABILITY
    universe_role = "literals"
    clause_arity: int | None = None

    def validate(self, p: CnfFormula) -> list[str]:
        out = []
        if not isinstance(p, CnfFormula):
            return [f"payload must be CnfFormula, got {type(p).__name__}"]
        if p.num_vars < 0:
            out.append("negative variable count")
        for j, c in enumerate(p.clauses):
            if any(l == 0 or abs(l) > p.num_vars for l in c):
                out.append(f"clause {j + 1} mentions a variable outside 1..{p.num_vars}")
            if len(set(c)) != len(c):
                out.append(f"clause {j + 1} repeats a literal")
            if self.clause_arity is not None and len(set(c)) != self.clause_arity:
                out.append(f"clause arity ≠ {self.clause_arity} (clause {j + 1})")
        return out

    def universe(self, p: CnfFormula):
        for v in range(1, p.num_vars + 1):
            yield lit(v)
            yield lit(-v)

    def is_solution(self, p: CnfFormula, s: frozenset[ElementId]) -> bool:
        for v in range(1, p.num_vars + 1):
            if (lit(v) in s) == (lit(-v) in s):
                return False
        return all(any(lit(l) in s for l in c) for c in p.clauses)

    def iter_solutions(self, p: CnfFormula, budget: Budget):
        for model in iter_models(p, budget):
            yield assignment_literals(model, p.num_vars)

    def parse_body(self, lines):
        if not lines or lines[0][1][:2] != ["p", "cnf"]:
            lineno = lines[0][0] if lines else 0
            raise ParseError("SAT body must start with 'p cnf <vars> <clauses>'", lineno, 1)
        lineno, head = lines[0]
        if len(head) != 4:
            raise ParseError("malformed 'p cnf' line", lineno, 1)
        n = parse_int(head[2], lineno, 3)
        m = parse_int(head[3], lineno, 4)
        clauses: list[tuple[int, ...]] = []
        current: list[int] = []
        last_line = lineno
        for lineno, tokens in lines[1:]:
            last_line = lineno
            for col, tok in enumerate(tokens, start=1):
                value = parse_int(tok, lineno, col)
                if value == 0:
                    clauses.append(tuple(current))
                    current = []
                else:
                    current.append(value)
        if current:
            raise ParseError("last clause is not terminated by 0", last_line, 1)
        if len(clauses) != m:
            raise ParseError(f"header announces {m} clauses, found {len(clauses)}", lines[0][0], 1)
        return CnfFormula(n, tuple(clauses))

    def serialize_body(self, p: CnfFormula) -> list[str]:
        lines = [f"p cnf {p.num_vars} {len(p.clauses)}"]
        lines.extend(" ".join(str(l) for l in c) + " 0" for c in p.clauses)
        return lines


class ThreeSatSpec(SatSpec):
    kind = ProblemKind.THREE_SATISFIABILITY
    clause_arity = 3


register(SatSpec())
register(ThreeSatSpec())
