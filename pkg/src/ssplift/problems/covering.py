"""Set Cover and Hitting Set, both LOP kinds with unit costs."""

from __future__ import annotations

from dataclasses import dataclass

from ssplift.core import KindSpec, ProblemKind, register
from ssplift.problems._common import Body, enumerate_covers, item, iter_bits


@dataclass(frozen=True)
class SetSystem:
    """Ground set ``0..num_items-1``, a list of subsets and a bound ``k``."""

    num_items: int
    sets: tuple[tuple[int, ...], ...]
    k: int

    @classmethod
    def of(cls, num_items: int, sets, k: int) -> "SetSystem":
        return cls(num_items, tuple(tuple(sorted(set(s))) for s in sets), k)


def _validate(p, out: list[str]) -> None:
    if p.num_items < 0:
        out.append("negative ground set size")
    for j, s in enumerate(p.sets):
        if len(set(s)) != len(s):
            out.append(f"set {j} repeats an item")
        if any(not 0 <= i < p.num_items for i in s):
            out.append(f"set {j} has an item outside 0..{p.num_items - 1}")


class SetCoverSpec(KindSpec):
    """Universe: the sets.  Solutions: at most k sets whose union is everything."""

    kind = ProblemKind.SET_COVER
    universe_role = "sets"
    is_lop = True
    ground_keyword = "items"

    def validate(self, p):
        if not isinstance(p, SetSystem):
            return [f"payload must be SetSystem, got {type(p).__name__}"]
        out: list[str] = []
        _validate(p, out)
        return out

    def universe(self, p):
        return (item("set", j) for j in range(len(p.sets)))

    def is_feasible(self, p, s):
        covered = set()
        for e in s:
            covered.update(p.sets[e.idx[0]])
        return len(covered) == p.num_items

    def is_solution(self, p, s):
        return len(s) <= p.k and self.is_feasible(p, s)

    def cost(self, p):
        return {item("set", j): 1 for j in range(len(p.sets))}

    def threshold(self, p):
        return p.k

    def _covers(self, p):
        return [sum(1 << i for i in s) for s in p.sets]

    def _iter(self, p, limit, budget):
        required = (1 << p.num_items) - 1
        for mask in enumerate_covers(self._covers(p), required, limit, budget):
            yield frozenset(item("set", j) for j in iter_bits(mask))

    def iter_solutions(self, p, budget):
        return self._iter(p, min(p.k, len(p.sets)), budget)

    def iter_feasible(self, p, budget):
        return self._iter(p, len(p.sets), budget)

    def parse_body(self, lines):
        body = Body(lines, {self.ground_keyword, "set", "k"})
        sets = tuple(tuple(r) for r in body.rows("set"))
        return SetSystem(body.int(self.ground_keyword), sets, body.int("k"))

    def serialize_body(self, p):
        lines = [f"{self.ground_keyword} {p.num_items}"]
        lines += [" ".join(["set", *map(str, s)]) for s in p.sets]
        lines.append(f"k {p.k}")
        return lines


class HittingSetSpec(SetCoverSpec):
    """Universe: the ground elements.  Solutions: at most k elements meeting every set."""

    kind = ProblemKind.HITTING_SET
    universe_role = "elements"
    ground_keyword = "elements"

    def universe(self, p):
        return (item("el", i) for i in range(p.num_items))

    def is_feasible(self, p, s):
        picked = {e.idx[0] for e in s}
        return all(picked.intersection(c) for c in p.sets)

    def cost(self, p):
        return {item("el", i): 1 for i in range(p.num_items)}

    def _covers(self, p):
        covers = [0] * p.num_items
        for j, c in enumerate(p.sets):
            for i in c:
                covers[i] |= 1 << j
        return covers

    def _iter(self, p, limit, budget):
        required = (1 << len(p.sets)) - 1
        for mask in enumerate_covers(self._covers(p), required, limit, budget):
            yield frozenset(item("el", i) for i in iter_bits(mask))

    def iter_solutions(self, p, budget):
        return self._iter(p, min(p.k, p.num_items), budget)

    def iter_feasible(self, p, budget):
        return self._iter(p, p.num_items, budget)


register(SetCoverSpec())
register(HittingSetSpec())
