"""Directed disjoint path problems (2DDP and kDDP) and the Steiner tree problem."""

from __future__ import annotations

import heapq
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
class DisjointPathsProblem:
    """Digraph plus terminal pairs ``(s_i, t_i)``; paths must be vertex-disjoint."""

    num_vertices: int
    arcs: tuple[tuple[int, int], ...]
    pairs: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()


def _decompose_paths(p: DisjointPathsProblem, arcs: list[tuple[int, int]]) -> bool:
    nxt: dict[int, int] = {}
    indeg: dict[int, int] = {}
    for u, v in arcs:
        if u in nxt:
            return False
        nxt[u] = v
        indeg[v] = indeg.get(v, 0) + 1
        if indeg[v] > 1:
            return False
    used_arcs = 0
    seen: set[int] = set()
    for s, t in p.pairs:
        if s in indeg or s in seen:
            return False
        cur = s
        seen.add(cur)
        while cur != t:
            if cur not in nxt:
                return False
            cur = nxt[cur]
            used_arcs += 1
            if cur in seen:
                return False
            seen.add(cur)
        if t in nxt:
            return False
    return used_arcs == len(arcs)


def iter_disjoint_paths(p: DisjointPathsProblem, budget: Budget) -> Iterator[list[tuple[int, int]]]:
    succ: list[list[int]] = [[] for _ in range(p.num_vertices)]
    for u, v in p.arcs:
        succ[u].append(v)
    terminals = [v for pair in p.pairs for v in pair]
    chosen: list[tuple[int, int]] = []

    def route(i: int, used: int) -> Iterator[list[tuple[int, int]]]:
        if i == len(p.pairs):
            yield list(chosen)
            return
        s, t = p.pairs[i]
        # terminals of later pairs are reserved for their own paths
        reserved = used
        for v in terminals[2 * (i + 1):]:
            reserved |= 1 << v

        def walk(cur: int, visited: int) -> Iterator[list[tuple[int, int]]]:
            budget.tick()
            if cur == t:
                yield from route(i + 1, visited)
                return
            for w in succ[cur]:
                if (visited | reserved) >> w & 1:
                    continue
                chosen.append((cur, w))
                yield from walk(w, visited | (1 << w))
                chosen.pop()

        if not (reserved >> s) & 1:
            yield from walk(s, used | (1 << s))

    yield from route(0, 0)


class _DisjointPathsSpec(KindSpec):
    universe_role = "arcs"
    exact_pairs: int | None = None

    def validate(self, p):
        if not isinstance(p, DisjointPathsProblem):
            return [f"payload must be DisjointPathsProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_digraph(p.num_vertices, p.arcs, p.labels, out)
        if self.exact_pairs is not None and len(p.pairs) != self.exact_pairs:
            out.append(f"expected exactly {self.exact_pairs} terminal pairs (s1,t1,s2,t2)")
        if not p.pairs:
            out.append("at least one terminal pair is required")
        terminals = [v for pair in p.pairs for v in pair]
        if any(not 0 <= v < p.num_vertices for v in terminals):
            out.append("terminal vertex outside the graph")
        if len(set(terminals)) != len(terminals):
            out.append("terminal vertices must be pairwise distinct")
        return out

    def universe(self, p):
        return (arc(u, v) for u, v in p.arcs)

    def is_solution(self, p, s):
        return _decompose_paths(p, [e.idx for e in s])

    def iter_solutions(self, p, budget):
        for arcs in iter_disjoint_paths(p, budget):
            yield frozenset(arc(u, v) for u, v in arcs)

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "arc", "pair", "label"})
        n = body.int("vertices")
        arcs = tuple((u, v) for u, v in body.rows("arc", 2))
        pairs = tuple((s, t) for s, t in body.rows("pair", 2))
        return DisjointPathsProblem(n, arcs, pairs, labels_tuple(body.labels(), n))

    def serialize_body(self, p):
        lines = [f"vertices {p.num_vertices}"] + label_lines(p.labels)
        lines += [f"arc {u} {v}" for u, v in p.arcs]
        return lines + [f"pair {s} {t}" for s, t in p.pairs]


class TwoDisjointPathsSpec(_DisjointPathsSpec):
    kind = ProblemKind.DIRECTED_TWO_DISJOINT_PATH
    exact_pairs = 2


class KDisjointPathsSpec(_DisjointPathsSpec):
    kind = ProblemKind.DIRECTED_K_DISJOINT_PATH


# ---------------------------------------------------------------------------
# Steiner tree


@dataclass(frozen=True)
class SteinerProblem:
    """Undirected graph with edge costs ``(u, v, c)``, terminals and bound ``k``."""

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    terminals: tuple[int, ...]
    k: int
    labels: tuple[str, ...] = ()


def is_steiner_tree(n: int, edges: list[tuple[int, int]], terminals) -> bool:
    if not edges:
        return len(set(terminals)) <= 1
    verts = {v for e in edges for v in e}
    if len(edges) != len(verts) - 1 or not set(terminals) <= verts:
        return False
    return is_connected(verts, edges)


def iter_steiner_trees(
    p: SteinerProblem, budget: Budget, max_cost: int | None
) -> Iterator[frozenset[tuple[int, int]]]:
    """Trees spanning all terminals with cost ≤ max_cost.

    Every such tree prunes (by repeatedly deleting non-terminal leaves) to a
    unique tree whose leaves are terminals.  Those are built by attaching, for
    each terminal in order, the unique path that joins it to the current tree;
    the remaining trees hang non-terminal subtrees off them within the
    leftover budget.
    """
    n = p.num_vertices
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, c in p.edges:
        adj[u].append((v, c))
        adj[v].append((u, c))
    cap = max_cost if max_cost is not None else sum(c for _, _, c in p.edges)
    terminals = sorted(set(p.terminals))
    key = lambda u, v: (u, v) if u < v else (v, u)  # noqa: E731

    def distances(sources: set[int]) -> list[float]:
        dist = [float("inf")] * n
        heap = [(0, s) for s in sources]
        for s in sources:
            dist[s] = 0
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, c in adj[u]:
                if d + c < dist[v]:
                    dist[v] = d + c
                    heapq.heappush(heap, (d + c, v))
        return dist

    def hang(verts: set[int], edges: list[tuple[int, int]], cost: int, banned: frozenset):
        budget.tick()
        for u in sorted(verts):
            for v, c in adj[u]:
                e = key(u, v)
                if v in verts or e in banned or cost + c > cap:
                    continue
                verts.add(v)
                edges.append(e)
                yield from hang(verts, edges, cost + c, banned)
                edges.pop()
                verts.discard(v)
                yield from hang(verts, edges, cost, banned | {e})
                return
        yield frozenset(edges)

    def attach(i: int, verts: set[int], edges: list[tuple[int, int]], cost: int):
        budget.tick()
        while i < len(terminals) and terminals[i] in verts:
            i += 1
        if i == len(terminals):
            yield from hang(set(verts), list(edges), cost, frozenset())
            return
        dist = distances(verts)
        if cost + max(dist[t] for t in terminals[i:]) > cap:
            return
        target = terminals[i]
        # walk backwards from the target until the tree is reached
        trail: list[tuple[int, int]] = []
        on_trail = {target}

        def walk(cur: int, spent: int):
            budget.tick()
            for v, c in adj[cur]:
                if v in on_trail or cost + spent + c + dist[v] > cap:
                    continue
                trail.append(key(cur, v))
                if v in verts:
                    new_verts = verts | on_trail
                    yield from attach(i + 1, new_verts, edges + trail, cost + spent + c)
                else:
                    on_trail.add(v)
                    yield from walk(v, spent + c)
                    on_trail.discard(v)
                trail.pop()

        yield from walk(target, 0)

    if not terminals:
        return
    yield from attach(1, {terminals[0]}, [], 0)


class SteinerTreeSpec(KindSpec):
    """Trees connecting every terminal; LOP with cost c and threshold k."""

    kind = ProblemKind.STEINER_TREE
    universe_role = "edges"
    is_lop = True

    def validate(self, p):
        if not isinstance(p, SteinerProblem):
            return [f"payload must be SteinerProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_simple_graph(p.num_vertices, [(u, v) for u, v, _ in p.edges], p.labels, out)
        if any(c < 0 for _, _, c in p.edges):
            out.append("edge costs must be nonnegative")
        if not p.terminals:
            out.append("at least one terminal vertex is required")
        if len(set(p.terminals)) != len(p.terminals):
            out.append("terminal listed twice")
        if any(not 0 <= t < p.num_vertices for t in p.terminals):
            out.append("terminal vertex outside the graph")
        return out

    def universe(self, p):
        return (edge(u, v) for u, v, _ in p.edges)

    def cost(self, p):
        return {edge(u, v): c for u, v, c in p.edges}

    def threshold(self, p):
        return p.k

    def is_feasible(self, p, s):
        return is_steiner_tree(p.num_vertices, [e.idx for e in s], p.terminals)

    def is_solution(self, p, s):
        c = self.cost(p)
        return self.is_feasible(p, s) and sum(c[e] for e in s) <= p.k

    def iter_solutions(self, p, budget):
        if p.k < 0:
            return
        for tree in iter_steiner_trees(p, budget, p.k):
            yield frozenset(edge(u, v) for u, v in tree)

    def iter_feasible(self, p, budget):
        for tree in iter_steiner_trees(p, budget, None):
            yield frozenset(edge(u, v) for u, v in tree)

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "edge", "terminals", "k", "label"})
        n = body.int("vertices")
        edges = tuple((u, v, c) for u, v, c in body.rows("edge", 3))
        return SteinerProblem(n, edges, body.ints("terminals") or (), body.int("k"), labels_tuple(body.labels(), n))

    def serialize_body(self, p):
        lines = [f"vertices {p.num_vertices}"] + label_lines(p.labels)
        lines += [f"edge {u} {v} {c}" for u, v, c in p.edges]
        lines.append(" ".join(["terminals", *map(str, p.terminals)]))
        return lines + [f"k {p.k}"]


register(TwoDisjointPathsSpec())
register(KDisjointPathsSpec())
register(SteinerTreeSpec())
