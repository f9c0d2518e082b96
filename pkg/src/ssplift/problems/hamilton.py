"""Hamiltonian path/cycle problems and the traveling salesman problem.

Solutions are arc or edge sets, never vertex sequences.  Enumeration is a
depth-first walk with reachability pruning: every unvisited vertex must keep
a usable predecessor and successor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ssplift.core import Budget, KindSpec, ProblemKind, register
from ssplift.problems._common import (
    Body,
    arc,
    edge,
    is_connected,
    label_lines,
    labels_tuple,
)
from ssplift.problems.feedback import validate_digraph
from ssplift.problems.graphs import validate_simple_graph


@dataclass(frozen=True)
class HamPathProblem:
    num_vertices: int
    arcs: tuple[tuple[int, int], ...]
    source: int
    sink: int
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class HamCycleProblem:
    num_vertices: int
    arcs: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class UHamCycleProblem:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class TspProblem:
    """Complete graph with nonnegative weights ``(u, v, w)`` and a bound ``k``."""

    num_vertices: int
    weights: tuple[tuple[int, int, int], ...]
    k: int
    labels: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# searches


def iter_directed_ham_paths(
    n: int, arcs, start: int, end: int, budget: Budget
) -> Iterator[list[tuple[int, int]]]:
    """Every Hamiltonian path from ``start`` to ``end`` as an arc list."""
    if n == 0:
        return
    succ: list[list[int]] = [[] for _ in range(n)]
    succ_mask = [0] * n
    pred_mask = [0] * n
    for u, v in arcs:
        succ[u].append(v)
        succ_mask[u] |= 1 << v
        pred_mask[v] |= 1 << u
    full = (1 << n) - 1
    path: list[tuple[int, int]] = []

    def viable(cur: int, visited: int) -> bool:
        rest = full & ~visited
        r = rest
        while r:
            low = r & -r
            u = low.bit_length() - 1
            r ^= low
            if not pred_mask[u] & (rest | (1 << cur)) & ~low:
                return False
            if u != end and not succ_mask[u] & rest & ~low:
                return False
        return True

    def rec(cur: int, visited: int) -> Iterator[list[tuple[int, int]]]:
        budget.tick()
        if visited == full:
            if cur == end:
                yield list(path)
            return
        if cur == end:
            return
        for w in succ[cur]:
            bit = 1 << w
            if visited & bit:
                continue
            nv = visited | bit
            if w == end and nv != full:
                continue
            if not viable(w, nv):
                continue
            path.append((cur, w))
            yield from rec(w, nv)
            path.pop()

    if start == end:
        if n == 1:
            yield []
        return
    if viable(start, 1 << start):
        yield from rec(start, 1 << start)


def iter_directed_ham_cycles(n: int, arcs, budget: Budget) -> Iterator[list[tuple[int, int]]]:
    """Cycles through all vertices; vertex 0 is split into a source copy and a
    virtual sink copy so the path search can be reused."""
    if n < 2:
        return
    virtual = n
    split = [(u, v if v != 0 else virtual) for u, v in arcs]
    for p in iter_directed_ham_paths(n + 1, split, 0, virtual, budget):
        yield [(u, 0 if v == virtual else v) for u, v in p]


def iter_undirected_ham_cycles(
    n: int,
    weighted_edges,
    budget: Budget,
    max_cost: int | None = None,
) -> Iterator[list[tuple[int, int]]]:
    """Hamiltonian cycles (n ≥ 3) as edge lists, each reported once.

    ``weighted_edges`` holds ``(u, v, w)`` triples with w ≥ 0; with
    ``max_cost`` given only cycles of total weight ≤ max_cost are produced.
    """
    if n < 3:
        return
    if max_cost is not None:
        # an edge heavier than the whole bound never fits in a tour
        weighted_edges = [(u, v, w) for u, v, w in weighted_edges if w <= max_cost]
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    nb_mask = [0] * n
    for u, v, w in weighted_edges:
        adj[u].append((w, v))
        adj[v].append((w, u))
        nb_mask[u] |= 1 << v
        nb_mask[v] |= 1 << u
    for lst in adj:
        lst.sort()
    weight = {}
    for u, v, w in weighted_edges:
        weight[(u, v)] = weight[(v, u)] = w
    min_in = None
    if max_cost is not None and any(w for _, _, w in weighted_edges):
        min_in = True
    full = (1 << n) - 1
    order: list[int] = [0]

    def viable(cur: int, visited: int, cost: int) -> bool:
        rest = full & ~visited
        allowed = rest | (1 << cur) | 1
        r = rest
        bound = cost
        while r:
            low = r & -r
            u = low.bit_length() - 1
            r ^= low
            if (nb_mask[u] & allowed & ~low).bit_count() < 2:
                return False
            if min_in:
                # u is entered from an unvisited vertex or from cur
                preds = (rest | (1 << cur)) & ~low
                best = next((w for w, x in adj[u] if (preds >> x) & 1), None)
                if best is None:
                    return False
                bound += best
        return max_cost is None or bound <= max_cost

    def rec(cur: int, visited: int, cost: int) -> Iterator[list[tuple[int, int]]]:
        budget.tick()
        if visited == full:
            w = weight.get((cur, 0))
            if w is None or (max_cost is not None and cost + w > max_cost):
                return
            if order[1] < order[-1]:
                cyc = [(order[i], order[i + 1]) for i in range(n - 1)] + [(cur, 0)]
                yield cyc
            return
        for w, x in adj[cur]:
            bit = 1 << x
            if visited & bit:
                continue
            if max_cost is not None and cost + w > max_cost:
                break
            if not viable(x, visited | bit, cost + w):
                continue
            order.append(x)
            yield from rec(x, visited | bit, cost + w)
            order.pop()

    if viable(0, 1, 0):
        yield from rec(0, 1, 0)


# ---------------------------------------------------------------------------
# specs


class DirectedHamPathSpec(KindSpec):
    kind = ProblemKind.DIRECTED_HAMILTONIAN_PATH
    universe_role = "arcs"

    def validate(self, p):
        if not isinstance(p, HamPathProblem):
            return [f"payload must be HamPathProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_digraph(p.num_vertices, p.arcs, p.labels, out)
        for name, v in (("source", p.source), ("sink", p.sink)):
            if not 0 <= v < p.num_vertices:
                out.append(f"{name} vertex outside the graph")
        if p.source == p.sink:
            out.append("source and sink coincide")
        return out

    def universe(self, p):
        return (arc(u, v) for u, v in p.arcs)

    def is_solution(self, p, s):
        return _is_directed_path(p.num_vertices, [e.idx for e in s], p.source, p.sink)

    def iter_solutions(self, p, budget):
        for path in iter_directed_ham_paths(p.num_vertices, p.arcs, p.source, p.sink, budget):
            yield frozenset(arc(u, v) for u, v in path)

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "arc", "source", "sink", "label"})
        n = body.int("vertices")
        arcs = tuple((u, v) for u, v in body.rows("arc", 2))
        return HamPathProblem(n, arcs, body.int("source"), body.int("sink"), labels_tuple(body.labels(), n))

    def serialize_body(self, p):
        lines = [f"vertices {p.num_vertices}"] + label_lines(p.labels)
        lines += [f"arc {u} {v}" for u, v in p.arcs]
        return lines + [f"source {p.source}", f"sink {p.sink}"]


def _is_directed_path(n: int, arcs: list[tuple[int, int]], start: int, end: int) -> bool:
    """True iff ``arcs`` form one directed path start→end through all n vertices."""
    if len(arcs) != n - 1:
        return False
    nxt = {}
    for u, v in arcs:
        if u in nxt:
            return False
        nxt[u] = v
    seen = {start}
    cur = start
    while cur in nxt:
        cur = nxt[cur]
        if cur in seen:
            return False
        seen.add(cur)
    return cur == end and len(seen) == n


class DirectedHamCycleSpec(KindSpec):
    kind = ProblemKind.DIRECTED_HAMILTONIAN_CYCLE
    universe_role = "arcs"

    def validate(self, p):
        if not isinstance(p, HamCycleProblem):
            return [f"payload must be HamCycleProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_digraph(p.num_vertices, p.arcs, p.labels, out)
        return out

    def universe(self, p):
        return (arc(u, v) for u, v in p.arcs)

    def is_solution(self, p, s):
        arcs = [e.idx for e in s]
        n = p.num_vertices
        if n < 2 or len(arcs) != n:
            return False
        nxt: dict[int, int] = {}
        for u, v in arcs:
            if u in nxt:
                return False
            nxt[u] = v
        cur, steps = 0, 0
        seen = set()
        while cur not in seen:
            seen.add(cur)
            if cur not in nxt:
                return False
            cur = nxt[cur]
            steps += 1
        return cur == 0 and steps == n

    def iter_solutions(self, p, budget):
        for cyc in iter_directed_ham_cycles(p.num_vertices, p.arcs, budget):
            yield frozenset(arc(u, v) for u, v in cyc)

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "arc", "label"})
        n = body.int("vertices")
        arcs = tuple((u, v) for u, v in body.rows("arc", 2))
        return HamCycleProblem(n, arcs, labels_tuple(body.labels(), n))

    def serialize_body(self, p):
        lines = [f"vertices {p.num_vertices}"] + label_lines(p.labels)
        return lines + [f"arc {u} {v}" for u, v in p.arcs]


def _is_undirected_ham_cycle(n: int, edges: list[tuple[int, int]]) -> bool:
    if n < 3 or len(edges) != n:
        return False
    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    return all(d == 2 for d in degree) and is_connected(set(range(n)), edges)


class UndirectedHamCycleSpec(KindSpec):
    kind = ProblemKind.UNDIRECTED_HAMILTONIAN_CYCLE
    universe_role = "edges"

    def validate(self, p):
        if not isinstance(p, UHamCycleProblem):
            return [f"payload must be UHamCycleProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_simple_graph(p.num_vertices, p.edges, p.labels, out)
        return out

    def universe(self, p):
        return (edge(u, v) for u, v in p.edges)

    def is_solution(self, p, s):
        return _is_undirected_ham_cycle(p.num_vertices, [e.idx for e in s])

    def iter_solutions(self, p, budget):
        weighted = [(u, v, 0) for u, v in p.edges]
        for cyc in iter_undirected_ham_cycles(p.num_vertices, weighted, budget):
            yield frozenset(edge(u, v) for u, v in cyc)

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "edge", "label"})
        n = body.int("vertices")
        edges = tuple((u, v) for u, v in body.rows("edge", 2))
        return UHamCycleProblem(n, edges, labels_tuple(body.labels(), n))

    def serialize_body(self, p):
        lines = [f"vertices {p.num_vertices}"] + label_lines(p.labels)
        return lines + [f"edge {u} {v}" for u, v in p.edges]


class TspSpec(KindSpec):
    """Tours of a complete graph; LOP with cost w and threshold k."""

    kind = ProblemKind.TRAVELING_SALESMAN
    universe_role = "edges"
    is_lop = True

    def validate(self, p):
        if not isinstance(p, TspProblem):
            return [f"payload must be TspProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_simple_graph(p.num_vertices, [(u, v) for u, v, _ in p.weights], p.labels, out)
        if any(w < 0 for _, _, w in p.weights):
            out.append("edge weights must be nonnegative")
        n = p.num_vertices
        if len({(min(u, v), max(u, v)) for u, v, _ in p.weights}) != n * (n - 1) // 2:
            out.append("graph not complete")
        if p.k < 0:
            out.append("tour bound k must be nonnegative")
        return out

    def universe(self, p):
        return (edge(u, v) for u, v, _ in p.weights)

    def is_feasible(self, p, s):
        return _is_undirected_ham_cycle(p.num_vertices, [e.idx for e in s])

    def is_solution(self, p, s):
        w = self.cost(p)
        return self.is_feasible(p, s) and sum(w[e] for e in s) <= p.k

    def cost(self, p):
        return {edge(u, v): w for u, v, w in p.weights}

    def threshold(self, p):
        return p.k

    def iter_solutions(self, p, budget):
        for cyc in iter_undirected_ham_cycles(p.num_vertices, p.weights, budget, max_cost=p.k):
            yield frozenset(edge(u, v) for u, v in cyc)

    def iter_feasible(self, p, budget):
        for cyc in iter_undirected_ham_cycles(p.num_vertices, p.weights, budget):
            yield frozenset(edge(u, v) for u, v in cyc)

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "edge", "k", "label"})
        n = body.int("vertices")
        weights = tuple((u, v, w) for u, v, w in body.rows("edge", 3))
        return TspProblem(n, weights, body.int("k"), labels_tuple(body.labels(), n))

    def serialize_body(self, p):
        lines = [f"vertices {p.num_vertices}"] + label_lines(p.labels)
        lines += [f"edge {u} {v} {w}" for u, v, w in p.weights]
        return lines + [f"k {p.k}"]


register(DirectedHamPathSpec())
register(DirectedHamCycleSpec())
register(UndirectedHamCycleSpec())
register(TspSpec())
