"""Number problems: Subset Sum, Knapsack, Partition, Two-Machine Scheduling.

All values are nonnegative.  Partition and scheduling break the
complement symmetry by requiring the last element to be in the solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ssplift.core import Budget, KindSpec, ProblemKind, register
from ssplift.problems._common import Body, item


@dataclass(frozen=True)
class SubsetSumProblem:
    numbers: tuple[int, ...]
    target: int


@dataclass(frozen=True)
class KnapsackProblem:
    profits: tuple[int, ...]
    weights: tuple[int, ...]
    capacity: int
    min_profit: int


@dataclass(frozen=True)
class PartitionProblem:
    numbers: tuple[int, ...]


@dataclass(frozen=True)
class SchedulingProblem:
    jobs: tuple[int, ...]
    threshold: int


def iter_index_subsets(values: tuple[int, ...], budget: Budget, lo: int, hi: int) -> Iterator[list[int]]:
    """Index subsets whose value sum lies in [lo, hi] (values nonnegative)."""
    n = len(values)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + values[i]
    chosen: list[int] = []

    def rec(i: int, total: int) -> Iterator[list[int]]:
        budget.tick()
        if total > hi or total + suffix[i] < lo:
            return
        if i == n:
            yield list(chosen)
            return
        chosen.append(i)
        yield from rec(i + 1, total + values[i])
        chosen.pop()
        yield from rec(i + 1, total)

    yield from rec(0, 0)


def _nonneg(values, what: str, out: list[str]) -> None:
    if any(v < 0 for v in values):
        out.append(f"{what} must be nonnegative")


class SubsetSumSpec(KindSpec):
    kind = ProblemKind.SUBSET_SUM
    universe_role = "numbers"

    def validate(self, p):
        if not isinstance(p, SubsetSumProblem):
            return [f"payload must be SubsetSumProblem, got {type(p).__name__}"]
        out: list[str] = []
        _nonneg(p.numbers, "numbers", out)
        _nonneg([p.target], "target", out)
        return out

    def universe(self, p):
        return (item("num", i) for i in range(len(p.numbers)))

    def is_solution(self, p, s):
        return sum(p.numbers[e.idx[0]] for e in s) == p.target

    def iter_solutions(self, p, budget):
        for idx in iter_index_subsets(p.numbers, budget, p.target, p.target):
            yield frozenset(item("num", i) for i in idx)

    def parse_body(self, lines):
        body = Body(lines, {"numbers", "target"})
        return SubsetSumProblem(body.ints("numbers") or (), body.int("target"))

    def serialize_body(self, p):
        return [" ".join(["numbers", *map(str, p.numbers)]), f"target {p.target}"]


class KnapsackSpec(KindSpec):
    """Objects with (profit, weight); LOP with cost -profit and threshold -P."""

    kind = ProblemKind.KNAPSACK
    universe_role = "objects"
    is_lop = True

    def validate(self, p):
        if not isinstance(p, KnapsackProblem):
            return [f"payload must be KnapsackProblem, got {type(p).__name__}"]
        out: list[str] = []
        if len(p.profits) != len(p.weights):
            out.append("profit and weight lists differ in length")
        _nonneg(p.profits, "profits", out)
        _nonneg(p.weights, "weights", out)
        _nonneg([p.capacity, p.min_profit], "capacity and profit bound", out)
        return out

    def universe(self, p):
        return (item("obj", i) for i in range(len(p.profits)))

    def is_feasible(self, p, s):
        return sum(p.weights[e.idx[0]] for e in s) <= p.capacity

    def is_solution(self, p, s):
        return self.is_feasible(p, s) and sum(p.profits[e.idx[0]] for e in s) >= p.min_profit

    def cost(self, p):
        return {item("obj", i): -v for i, v in enumerate(p.profits)}

    def threshold(self, p):
        return -p.min_profit

    def iter_feasible(self, p, budget):
        for idx in iter_index_subsets(p.weights, budget, 0, p.capacity):
            yield frozenset(item("obj", i) for i in idx)

    def iter_solutions(self, p, budget):
        n = len(p.profits)
        profit_suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            profit_suffix[i] = profit_suffix[i + 1] + p.profits[i]
        chosen: list[int] = []

        def rec(i: int, weight: int, profit: int):
            budget.tick()
            if weight > p.capacity or profit + profit_suffix[i] < p.min_profit:
                return
            if i == n:
                yield frozenset(item("obj", j) for j in chosen)
                return
            chosen.append(i)
            yield from rec(i + 1, weight + p.weights[i], profit + p.profits[i])
            chosen.pop()
            yield from rec(i + 1, weight, profit)

        yield from rec(0, 0, 0)

    def parse_body(self, lines):
        body = Body(lines, {"item", "capacity", "profit"})
        rows = body.rows("item", 2)
        return KnapsackProblem(
            tuple(r[0] for r in rows), tuple(r[1] for r in rows), body.int("capacity"), body.int("profit")
        )

    def serialize_body(self, p):
        lines = [f"item {pr} {w}" for pr, w in zip(p.profits, p.weights)]
        return lines + [f"capacity {p.capacity}", f"profit {p.min_profit}"]


class PartitionSpec(KindSpec):
    kind = ProblemKind.PARTITION
    universe_role = "numbers"

    def validate(self, p):
        if not isinstance(p, PartitionProblem):
            return [f"payload must be PartitionProblem, got {type(p).__name__}"]
        out: list[str] = []
        if not p.numbers:
            out.append("partition needs at least one number")
        _nonneg(p.numbers, "numbers", out)
        return out

    def universe(self, p):
        return (item("num", i) for i in range(len(p.numbers)))

    def is_solution(self, p, s):
        last = len(p.numbers) - 1
        idx = {e.idx[0] for e in s}
        inside = sum(p.numbers[i] for i in idx)
        return last in idx and 2 * inside == sum(p.numbers)

    def iter_solutions(self, p, budget):
        total = sum(p.numbers)
        if total % 2:
            return
        *head, last = p.numbers
        want = total // 2 - last
        if want < 0:
            return
        for idx in iter_index_subsets(tuple(head), budget, want, want):
            yield frozenset(item("num", i) for i in [*idx, len(head)])

    def parse_body(self, lines):
        body = Body(lines, {"numbers"})
        return PartitionProblem(body.ints("numbers") or ())

    def serialize_body(self, p):
        return [" ".join(["numbers", *map(str, p.numbers)])]


class SchedulingSpec(KindSpec):
    kind = ProblemKind.TWO_MACHINE_SCHEDULING
    universe_role = "jobs"

    def validate(self, p):
        if not isinstance(p, SchedulingProblem):
            return [f"payload must be SchedulingProblem, got {type(p).__name__}"]
        out: list[str] = []
        if not p.jobs:
            out.append("scheduling needs at least one job")
        _nonneg(p.jobs, "processing times", out)
        return out

    def universe(self, p):
        return (item("job", i) for i in range(len(p.jobs)))

    def is_solution(self, p, s):
        last = len(p.jobs) - 1
        idx = {e.idx[0] for e in s}
        first = sum(p.jobs[i] for i in idx)
        second = sum(p.jobs) - first
        return last in idx and first <= p.threshold and second <= p.threshold

    def iter_solutions(self, p, budget):
        total = sum(p.jobs)
        *head, last = p.jobs
        # first machine load L must satisfy L ≤ T and total - L ≤ T
        lo = total - p.threshold - last
        hi = p.threshold - last
        if hi < 0 or lo > hi:
            return
        for idx in iter_index_subsets(tuple(head), budget, lo, hi):
            yield frozenset(item("job", i) for i in [*idx, len(head)])

    def parse_body(self, lines):
        body = Body(lines, {"jobs", "threshold"})
        return SchedulingProblem(body.ints("jobs") or (), body.int("threshold"))

    def serialize_body(self, p):
        return [" ".join(["jobs", *map(str, p.jobs)]), f"threshold {p.threshold}"]


register(SubsetSumSpec())
register(KnapsackSpec())
register(PartitionSpec())
register(SchedulingSpec())
