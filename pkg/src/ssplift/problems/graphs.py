"""Vertex-subset problems on undirected graphs: Vertex Cover, Independent Set,
Clique and Dominating Set.  All four are LOP kinds over the vertex set."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from ssplift.core import Budget, ElementId, KindSpec, ProblemKind, register
from ssplift.problems._common import (
    Body,
    check_labels,
    enumerate_covers,
    iter_bits,
    label_lines,
    labels_tuple,
    min_cover_at_most,
    vertex,
)


@dataclass(frozen=True)
class GraphProblem:
    """Undirected simple graph on vertices 0..n-1 plus an integer bound ``k``."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    k: int
    labels: tuple[str, ...] = ()

    @classmethod
    def of(cls, n: int, edges, k: int, labels=()) -> "GraphProblem":
        norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
        return cls(n, tuple(norm), k, tuple(labels))

    def adjacency(self) -> list[int]:
        adj = [0] * self.num_vertices
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def complement_edges(self) -> list[tuple[int, int]]:
        present = set(self.edges)
        n = self.num_vertices
        return [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]


def validate_simple_graph(n: int, edges, labels, out: list[str]) -> None:
    if n < 0:
        out.append("negative vertex count")
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            out.append(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        elif u == v:
            out.append(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            out.append(f"duplicate edge {key}")
        seen.add(key)
    check_labels(labels, n, out)


def vertex_set(s: frozenset[ElementId]) -> set[int]:
    return {e.idx[0] for e in s}


def mask_to_vertices(mask: int) -> frozenset[ElementId]:
    return frozenset(vertex(v) for v in iter_bits(mask))


class _GraphSpec(KindSpec):
    universe_role = "vertices"
    is_lop = True

    def validate(self, p: GraphProblem) -> list[str]:
        if not isinstance(p, GraphProblem):
            return [f"payload must be GraphProblem, got {type(p).__name__}"]
        out: list[str] = []
        validate_simple_graph(p.num_vertices, p.edges, p.labels, out)
        return out

    def universe(self, p: GraphProblem):
        return (vertex(v) for v in range(p.num_vertices))

    def parse_body(self, lines):
        body = Body(lines, {"vertices", "edge", "k", "label"})
        n = body.int("vertices")
        edges = tuple((u, v) for u, v in body.rows("edge", 2))
        return GraphProblem(n, edges, body.int("k"), labels_tuple(body.labels(), n))

    def serialize_body(self, p: GraphProblem) -> list[str]:
        lines = [f"vertices {p.num_vertices}"]
        lines += label_lines(p.labels)
        lines += [f"edge {u} {v}" for u, v in p.edges]
        lines.append(f"k {p.k}")
        return lines


class VertexCoverSpec(_GraphSpec):
    kind = ProblemKind.VERTEX_COVER

    def is_solution(self, p, s):
        vs = vertex_set(s)
        return len(vs) <= p.k and all(u in vs or v in vs for u, v in p.edges)

    def is_feasible(self, p, s):
        vs = vertex_set(s)
        return all(u in vs or v in vs for u, v in p.edges)

    def cost(self, p):
        return {vertex(v): 1 for v in range(p.num_vertices)}

    def threshold(self, p):
        return p.k

    def _covers(self, p: GraphProblem) -> list[int]:
        covers = [0] * p.num_vertices
        for j, (u, v) in enumerate(p.edges):
            covers[u] |= 1 << j
            covers[v] |= 1 << j
        return covers

    def iter_solutions(self, p, budget):
        required = (1 << len(p.edges)) - 1
        for mask in enumerate_covers(self._covers(p), required, min(p.k, p.num_vertices), budget):
            yield mask_to_vertices(mask)

    def iter_feasible(self, p, budget):
        required = (1 << len(p.edges)) - 1
        for mask in enumerate_covers(self._covers(p), required, p.num_vertices, budget):
            yield mask_to_vertices(mask)


def iter_independent_sets(adj: list[int], min_size: int, budget: Budget) -> Iterator[int]:
    n = len(adj)

    def rec(i: int, chosen: int, size: int) -> Iterator[int]:
        budget.tick()
        if size + (n - i) < min_size:
            return
        if i == n:
            yield chosen
            return
        if not adj[i] & chosen:
            yield from rec(i + 1, chosen | (1 << i), size + 1)
        yield from rec(i + 1, chosen, size)

    yield from rec(0, 0, 0)


class IndependentSetSpec(_GraphSpec):
    """Independent sets of size at least ``k``; LOP with cost -1 and threshold -k."""

    kind = ProblemKind.INDEPENDENT_SET

    def _adj(self, p: GraphProblem) -> list[int]:
        return p.adjacency()

    def is_feasible(self, p, s):
        vs = vertex_set(s)
        adj = self._adj(p)
        m = sum(1 << v for v in vs)
        return all(not adj[v] & m for v in vs)

    def is_solution(self, p, s):
        return len(s) >= p.k and self.is_feasible(p, s)

    def cost(self, p):
        return {vertex(v): -1 for v in range(p.num_vertices)}

    def threshold(self, p):
        return -p.k

    def iter_solutions(self, p, budget):
        for mask in iter_independent_sets(self._adj(p), p.k, budget):
            yield mask_to_vertices(mask)

    def iter_feasible(self, p, budget):
        for mask in iter_independent_sets(self._adj(p), 0, budget):
            yield mask_to_vertices(mask)


class CliqueSpec(IndependentSetSpec):
    """Cliques of size at least ``k``: independent sets of the complement."""

    kind = ProblemKind.CLIQUE

    def _adj(self, p: GraphProblem) -> list[int]:
        n = p.num_vertices
        full = (1 << n) - 1
        return [full & ~a & ~(1 << v) for v, a in enumerate(p.adjacency())]

    def is_solution(self, p, s):
        vs = sorted(vertex_set(s))
        present = set(p.edges)
        pairs_ok = all((u, v) in present for i, u in enumerate(vs) for v in vs[i + 1:])
        return len(vs) >= p.k and pairs_ok


class DominatingSetSpec(_GraphSpec):
    kind = ProblemKind.DOMINATING_SET

    def _closed(self, p: GraphProblem) -> list[int]:
        return [a | (1 << v) for v, a in enumerate(p.adjacency())]

    def is_feasible(self, p, s):
        vs = vertex_set(s)
        dominated = set(vs)
        for u, v in p.edges:
            if u in vs:
                dominated.add(v)
            if v in vs:
                dominated.add(u)
        return len(dominated) == p.num_vertices

    def is_solution(self, p, s):
        return len(s) <= p.k and self.is_feasible(p, s)

    def cost(self, p):
        return {vertex(v): 1 for v in range(p.num_vertices)}

    def threshold(self, p):
        return p.k

    def iter_solutions(self, p, budget):
        required = (1 << p.num_vertices) - 1
        for mask in enumerate_covers(self._closed(p), required, min(p.k, p.num_vertices), budget):
            yield mask_to_vertices(mask)

    def iter_feasible(self, p, budget):
        required = (1 << p.num_vertices) - 1
        for mask in enumerate_covers(self._closed(p), required, p.num_vertices, budget):
            yield mask_to_vertices(mask)

    def project_solutions(self, p, image, budget):
        """For each pattern P on the image, test whether P extends to a
        dominating set of size ≤ k using only vertices outside the image."""
        w = sorted(e.idx[0] for e in image)
        if len(w) > 16:
            return None
        closed = self._closed(p)
        required = (1 << p.num_vertices) - 1
        w_mask = sum(1 << v for v in w)
        outside = [closed[v] for v in range(p.num_vertices) if not (w_mask >> v) & 1]
        found = set()
        for bits in product((0, 1), repeat=len(w)):
            chosen = [v for v, b in zip(w, bits) if b]
            left = p.k - len(chosen)
            if left < 0:
                continue
            covered = 0
            for v in chosen:
                covered |= closed[v]
            budget.tick()
            if min_cover_at_most(outside, required & ~covered, left, budget):
                found.add(frozenset(vertex(v) for v in chosen))
        return found


register(VertexCoverSpec())
register(IndependentSetSpec())
register(CliqueSpec())
register(DominatingSetSpec())
