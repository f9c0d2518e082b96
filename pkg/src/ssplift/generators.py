"""Seeded random fixtures, small enough for exhaustive enumeration."""

from __future__ import annotations

import random
from itertools import combinations

from ssplift.core import ProblemKind as K, SspInstance
from ssplift.problems import (
    CnfFormula,
    DisjointPathsProblem,
    GraphProblem,
    HamCycleProblem,
    HamPathProblem,
    PartitionProblem,
    SubsetSumProblem,
    UHamCycleProblem,
)
from ssplift.variants import CombInterdictionInstance, CombTwoStageInstance, RestrictedRegretInstance

DEFAULT_SEED = 20240917


def random_clause(rng: random.Random, num_vars: int, width: int) -> tuple[int, ...]:
    chosen = rng.sample(range(1, num_vars + 1), width)
    return tuple(v if rng.random() < 0.5 else -v for v in chosen)


def random_3sat(rng: random.Random, max_vars: int = 3, max_clauses: int = 3) -> SspInstance:
    n = rng.randint(3, max(3, max_vars))
    m = rng.randint(0, max_clauses)
    clauses = [random_clause(rng, n, 3) for _ in range(m)]
    return SspInstance(K.THREE_SATISFIABILITY, CnfFormula.of(n, clauses))


def random_sat(
    rng: random.Random, max_vars: int = 3, max_clauses: int = 3, max_width: int = 5, min_width: int = 0
) -> SspInstance:
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        width = rng.randint(min_width, max_width)
        # wide clauses may repeat variables with opposite signs but never a literal
        pool = [v for v in range(1, n + 1)] + [-v for v in range(1, n + 1)]
        clauses.append(tuple(rng.sample(pool, min(width, len(pool)))))
    return SspInstance(K.SATISFIABILITY, CnfFormula.of(n, clauses))


def random_graph(rng: random.Random, max_vertices: int = 6, density: float | None = None) -> tuple[int, list]:
    n = rng.randint(1, max_vertices)
    p = rng.uniform(0.2, 0.8) if density is None else density
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return n, edges


def random_graph_instance(kind: K, rng: random.Random, max_vertices: int = 6) -> SspInstance:
    n, edges = random_graph(rng, max_vertices)
    return SspInstance(kind, GraphProblem.of(n, edges, rng.randint(0, n)))


def random_vertex_cover(rng: random.Random, max_vertices: int = 6) -> SspInstance:
    return random_graph_instance(K.VERTEX_COVER, rng, max_vertices)


def random_independent_set(rng: random.Random, max_vertices: int = 6) -> SspInstance:
    return random_graph_instance(K.INDEPENDENT_SET, rng, max_vertices)


def random_subset_sum(rng: random.Random, max_items: int = 8, max_value: int = 20) -> SspInstance:
    numbers = tuple(rng.randint(0, max_value) for _ in range(rng.randint(0, max_items)))
    total = sum(numbers)
    target = rng.randint(0, total + 2)
    return SspInstance(K.SUBSET_SUM, SubsetSumProblem(numbers, target))


def random_partition(rng: random.Random, max_items: int = 8, max_value: int = 20) -> SspInstance:
    numbers = tuple(rng.randint(0, max_value) for _ in range(rng.randint(1, max_items)))
    return SspInstance(K.PARTITION, PartitionProblem(numbers))


def _random_arcs(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]


def random_dham_path(rng: random.Random, max_vertices: int = 6) -> SspInstance:
    n = rng.randint(2, max_vertices)
    arcs = _random_arcs(rng, n, rng.uniform(0.3, 0.7))
    s, t = rng.sample(range(n), 2)
    return SspInstance(K.DIRECTED_HAMILTONIAN_PATH, HamPathProblem(n, tuple(arcs), s, t))


def random_dham_cycle(rng: random.Random, max_vertices: int = 6) -> SspInstance:
    n = rng.randint(2, max_vertices)
    arcs = _random_arcs(rng, n, rng.uniform(0.3, 0.7))
    return SspInstance(K.DIRECTED_HAMILTONIAN_CYCLE, HamCycleProblem(n, tuple(arcs)))


def random_uham_cycle(rng: random.Random, max_vertices: int = 6) -> SspInstance:
    n = rng.randint(3, max_vertices)
    p = rng.uniform(0.4, 0.9)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return SspInstance(K.UNDIRECTED_HAMILTONIAN_CYCLE, UHamCycleProblem(n, tuple(edges)))


def random_2ddp(rng: random.Random, max_vertices: int = 6) -> SspInstance:
    n = rng.randint(4, max(4, max_vertices))
    arcs = _random_arcs(rng, n, rng.uniform(0.25, 0.6))
    s1, t1, s2, t2 = rng.sample(range(n), 4)
    return SspInstance(K.DIRECTED_TWO_DISJOINT_PATH, DisjointPathsProblem(n, tuple(arcs), ((s1, t1), (s2, t2))))


GENERATORS = {
    K.SATISFIABILITY: random_sat,
    K.THREE_SATISFIABILITY: random_3sat,
    K.VERTEX_COVER: random_vertex_cover,
    K.INDEPENDENT_SET: random_independent_set,
    K.SUBSET_SUM: random_subset_sum,
    K.PARTITION: random_partition,
    K.DIRECTED_HAMILTONIAN_PATH: random_dham_path,
    K.DIRECTED_HAMILTONIAN_CYCLE: random_dham_cycle,
    K.UNDIRECTED_HAMILTONIAN_CYCLE: random_uham_cycle,
    K.DIRECTED_TWO_DISJOINT_PATH: random_2ddp,
}


def random_instance(kind: K, rng: random.Random) -> SspInstance:
    return GENERATORS[kind](rng)


def fixtures(kind: K, count: int, seed: int = DEFAULT_SEED) -> list[SspInstance]:
    rng = random.Random(f"{seed}:{kind.value}")
    return [random_instance(kind, rng) for _ in range(count)]


# ---------------------------------------------------------------------------
# variant fixtures over a given base


def random_subset(rng: random.Random, elements, p: float = 0.5) -> frozenset:
    return frozenset(e for e in elements if rng.random() < p)


def random_comb_interdiction(rng: random.Random, base: SspInstance):
    blockable = random_subset(rng, base.universe(), rng.uniform(0.2, 0.7))
    return CombInterdictionInstance(base, blockable, rng.randint(0, max(1, len(blockable))))


def random_binary_bounds(rng: random.Random, elements) -> dict:
    return {e: rng.choice(((0, 0), (0, 1), (0, 1), (1, 1))) for e in elements}


def random_restricted_regret(rng: random.Random, base: SspInstance):
    """0/1 bounds on a Yes-instance base; the caller supplies a Yes-instance."""
    u = list(base.universe())
    return RestrictedRegretInstance(base, random_binary_bounds(rng, u), rng.randint(0, 2))


def random_comb_two_stage(rng: random.Random, base: SspInstance):
    u = list(base.universe())
    first = random_subset(rng, u, rng.uniform(0.1, 0.5))
    blockable = random_subset(rng, [e for e in u if e not in first], rng.uniform(0.2, 0.6))
    return CombTwoStageInstance(base, first, blockable, rng.randint(0, min(2, len(blockable))))


def min_vertex_cover_size(n: int, edges) -> int:
    """Smallest cover size by brute force (n is tiny)."""
    for size in range(n + 1):
        for cover in combinations(range(n), size):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in edges):
                return size
    return n


def random_tight_vertex_cover(rng: random.Random, max_vertices: int = 6) -> SspInstance:
    """Vertex cover whose threshold equals the minimum cover size."""
    n, edges = random_graph(rng, max_vertices)
    return SspInstance(K.VERTEX_COVER, GraphProblem.of(n, edges, min_vertex_cover_size(n, edges)))
