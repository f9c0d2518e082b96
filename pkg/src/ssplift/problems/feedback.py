"""Feedback Vertex Set and Feedback Arc Set on directed graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from ssplift.core import Budget, KindSpec, ProblemKind, register
from ssplift.problems._common import (
    Body,
    arc,
    check_labels,
    find_cycle,
    is_acyclic,
    label_lines,
    labels_tuple,
    vertex,
)


@dataclass(frozen=True)
class DigraphProblem:
    """Directed graph on vertices 0..n-1 (no loops, no parallel arcs) plus ``k``."""

    num_vertices: int
    arcs: tuple[tuple[int, int], ...]
    k: int
    labels: tuple[str, ...] = ()

    @classmethod
    def of(cls, n: int, arcs, k: int, labels=()) -> "DigraphProblem":
        return cls(n, tuple(sorted(set(arcs))), k, tuple(labels))


def validate_digraph(n: int, arcs, labels, out: list[str]) -> None:
    if n < 0:
        out.append("negative vertex count")
    seen = set()
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            out.append(f"arc ({u},{v}) has an endpoint outside 0..{n - 1}")
        elif u == v:
            out.append(f"self-loop at vertex {u}")
        if (u, v) in seen:
            out.append(f"duplicate arc ({u},{v})")
        seen.add((u, v))
    check_labels(labels, n, out)


class _DigraphSpec(KindSpec):
    is_lop = True

    def validate(self, p):
        if not isinstance(p, DigraphProblem):
            return [f"payload must be DigraphProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_digraph(p.num_vertices, p.arcs, p.labels, out)
        return out

    def is_solution(self, p, s):
        return len(s) <= p.k and self.is_feasible(p, s)

    def threshold(self, p):
        return p.k

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "arc", "k", "label"})
        n = body.int("vertices")
        arcs = tuple((u, v) for u, v in body.rows("arc", 2))
        return DigraphProblem(n, arcs, body.int("k"), labels_tuple(body.labels(), n))

    def serialize_body(self, p):
        lines = [f"vertices {p.num_vertices}"]
        lines += label_lines(p.labels)
        lines += [f"arc {u} {v}" for u, v in p.arcs]
        lines.append(f"k {p.k}")
        return lines


class FeedbackVertexSetSpec(_DigraphSpec):
    kind = ProblemKind.FEEDBACK_VERTEX_SET
    universe_role = "vertices"

    def universe(self, p):
        return (vertex(v) for v in range(p.num_vertices))

    def is_feasible(self, p, s):
        gone = {e.idx[0] for e in s}
        return is_acyclic(p.num_vertices, [(u, v) for u, v in p.arcs if u not in gone and v not in gone])

    def cost(self, p):
        return {vertex(v): 1 for v in range(p.num_vertices)}

    def _iter(self, p, limit, budget: Budget):
        n = p.num_vertices
        for size in range(0, min(limit, n) + 1):
            for combo in combinations(range(n), size):
                budget.tick()
                gone = set(combo)
                if is_acyclic(n, [(u, v) for u, v in p.arcs if u not in gone and v not in gone]):
                    yield frozenset(vertex(v) for v in combo)

    def iter_solutions(self, p, budget):
        return self._iter(p, p.k, budget)

    def iter_feasible(self, p, budget):
        return self._iter(p, p.num_vertices, budget)


class FeedbackArcSetSpec(_DigraphSpec):
    kind = ProblemKind.FEEDBACK_ARC_SET
    universe_role = "arcs"

    def universe(self, p):
        return (arc(u, v) for u, v in p.arcs)

    def is_feasible(self, p, s):
        gone = {e.idx for e in s}
        return is_acyclic(p.num_vertices, [a for a in p.arcs if a not in gone])

    def cost(self, p):
        return {arc(u, v): 1 for u, v in p.arcs}

    def _iter(self, p, limit, budget: Budget):
        n = p.num_vertices
        for size in range(0, min(limit, len(p.arcs)) + 1):
            for combo in combinations(p.arcs, size):
                budget.tick()
                gone = set(combo)
                if is_acyclic(n, [a for a in p.arcs if a not in gone]):
                    yield frozenset(arc(u, v) for u, v in combo)

    def iter_solutions(self, p, budget):
        return self._iter(p, p.k, budget)

    def iter_feasible(self, p, budget):
        return self._iter(p, len(p.arcs), budget)

    def project_solutions(self, p, image, budget):
        """Per image pattern P: can at most k - |P| arcs outside the image,
        together with P, break every cycle?"""
        w = sorted(e.idx for e in image)
        if len(w) > 16:
            return None
        w_set = set(w)
        succ: list[list[int]] = [[] for _ in range(p.num_vertices)]
        for u, v in p.arcs:
            succ[u].append(v)
        found = set()
        for bits in product((0, 1), repeat=len(w)):
            chosen = {a for a, b in zip(w, bits) if b}
            left = p.k - len(chosen)
            budget.tick()
            if left >= 0 and _fas_completes(p.num_vertices, succ, set(chosen), w_set, left, budget):
                found.add(frozenset(arc(*a) for a in chosen))
        return found


def _fas_completes(n, succ, removed: set, protected: set, left: int, budget: Budget) -> bool:
    """Bounded search: remove at most ``left`` unprotected arcs to kill all cycles."""
    budget.tick()
    cycle = find_cycle(n, succ, lambda u, v: (u, v) not in removed)
    if cycle is None:
        return True
    if left == 0:
        return False
    # packing of cycles disjoint on removable arcs gives a lower bound
    packed = set(removed)
    count = 0
    cyc = cycle
    while cyc is not None:
        removable = [a for a in cyc if a not in protected]
        if not removable:
            return False
        count += 1
        if count > left:
            return False
        packed.update(removable)
        cyc = find_cycle(n, succ, lambda u, v: (u, v) not in packed)
    for a in cycle:
        if a in protected:
            continue
        removed.add(a)
        ok = _fas_completes(n, succ, removed, protected, left - 1, budget)
        removed.discard(a)
        if ok:
            return True
    return False


register(FeedbackVertexSetSpec())
register(FeedbackArcSetSpec())
