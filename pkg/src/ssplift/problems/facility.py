"""Facility location problems: UFL, p-Center and p-Median.

These are SSP-only kinds: their objectives take a minimum over the opened
facilities, which is not linear in the chosen set.  A client with no open
facility has unbounded service cost, so the empty facility set is never a
solution unless there are no clients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ssplift.core import KindSpec, ProblemKind, register
from ssplift.problems._common import Body, item


@dataclass(frozen=True)
class FacilityProblem:
    """``service[i][j]`` is the cost of serving client i from facility j."""

    num_clients: int
    num_facilities: int
    service: tuple[tuple[int, ...], ...]
    k: int
    opening: tuple[int, ...] = ()
    p: int = 0


def service_costs(p: FacilityProblem, opened: list[int]) -> list[int] | None:
    """Per-client cheapest service cost, or None if some client is unserved."""
    if not opened:
        return None if p.num_clients else []
    return [min(row[j] for j in opened) for row in p.service]


class _FacilitySpec(KindSpec):
    universe_role = "facilities"
    uses_opening = False

    def validate(self, p):
        if not isinstance(p, FacilityProblem):
            return [f"payload must be FacilityProblem, got {type(p).__name__}"]
        out = []
        if p.num_clients < 0 or p.num_facilities < 0:
            out.append("negative client or facility count")
        if len(p.service) != p.num_clients:
            out.append("service matrix row count differs from client count")
        if any(len(row) != p.num_facilities for row in p.service):
            out.append("service matrix row length differs from facility count")
        if self.uses_opening:
            if len(p.opening) != p.num_facilities:
                out.append("opening cost count differs from facility count")
        elif p.opening:
            out.append(f"{self.kind.value} takes no opening costs")
        return out

    def universe(self, p):
        return (item("fac", j) for j in range(p.num_facilities))

    def is_solution(self, p, s):
        return self._holds(p, sorted(e.idx[0] for e in s))

    def _holds(self, p, opened: list[int]) -> bool:
        raise NotImplementedError

    def iter_solutions(self, p, budget):
        for size in range(p.num_facilities + 1):
            for combo in combinations(range(p.num_facilities), size):
                budget.tick()
                if self._holds(p, list(combo)):
                    yield frozenset(item("fac", j) for j in combo)

    def parse_body(self, lines):
        keys = {"clients", "facilities", "service", "k", "opening" if self.uses_opening else "p"}
        body = Body(lines, keys)
        m = body.int("clients")
        n = body.int("facilities")
        rows = tuple(tuple(r) for r in body.rows("service"))
        if self.uses_opening:
            opening = body.ints("opening")
            return FacilityProblem(m, n, rows, body.int("k"), opening=opening or ())
        return FacilityProblem(m, n, rows, body.int("k"), p=body.int("p"))

    def serialize_body(self, p):
        lines = [f"clients {p.num_clients}", f"facilities {p.num_facilities}"]
        if self.uses_opening:
            lines.append(" ".join(["opening", *map(str, p.opening)]))
        else:
            lines.append(f"p {p.p}")
        lines += [" ".join(["service", *map(str, row)]) for row in p.service]
        lines.append(f"k {p.k}")
        return lines


class UflSpec(_FacilitySpec):
    kind = ProblemKind.UNCAPACITATED_FACILITY_LOCATION
    uses_opening = True

    def _holds(self, p, opened):
        costs = service_costs(p, opened)
        if costs is None:
            return False
        return sum(p.opening[j] for j in opened) + sum(costs) <= p.k


class PCenterSpec(_FacilitySpec):
    kind = ProblemKind.P_CENTER

    def _holds(self, p, opened):
        if len(opened) > p.p:
            return False
        costs = service_costs(p, opened)
        if costs is None:
            return False
        return max(costs, default=0) <= p.k


class PMedianSpec(_FacilitySpec):
    kind = ProblemKind.P_MEDIAN

    def _holds(self, p, opened):
        if len(opened) > p.p:
            return False
        costs = service_costs(p, opened)
        if costs is None:
            return False
        return sum(costs) <= p.k


register(UflSpec())
register(PCenterSpec())
register(PMedianSpec())
