"""The catalog of solution-preserving reductions rooted at SAT.

Every builder takes a validated source instance and returns the target
instance together with the element map ``source id -> target id``.  Gadget
vertices get deterministic names so serialized targets are byte-stable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

from ssplift.core import ElementId, KindMismatch, ProblemKind as K, SspInstance, check_int
from ssplift.problems import (
    CnfFormula,
    DigraphProblem,
    DisjointPathsProblem,
    FacilityProblem,
    GraphProblem,
    HamCycleProblem,
    HamPathProblem,
    KnapsackProblem,
    PartitionProblem,
    SchedulingProblem,
    SetSystem,
    SteinerProblem,
    SubsetSumProblem,
    TspProblem,
    UHamCycleProblem,
    arc,
    edge,
    item,
    lit,
    vertex,
)
from ssplift.reductions.engine import SspReduction, compose_all

# Base of the digit table in 3SAT -> Subset Sum.  Column sums never exceed 6,
# so base 10 rules out carries.
SUBSET_SUM_BASE = 10


def _literal_map(n: int, target: Callable[[int], ElementId]) -> dict[ElementId, ElementId]:
    """Map every literal of variables 1..n through ``target(signed literal)``."""
    out = {}
    for v in range(1, n + 1):
        out[lit(v)] = target(v)
        out[lit(-v)] = target(-v)
    return out


def _literal_slot(literal: int) -> int:
    """0-based position of a literal in the order x1, ¬x1, x2, ¬x2, ..."""
    return 2 * (abs(literal) - 1) + (0 if literal > 0 else 1)


def _literal_name(literal: int) -> str:
    return f"x{literal}" if literal > 0 else f"~x{-literal}"


class _Names:
    """Allocates vertex indices together with stable labels."""

    def __init__(self) -> None:
        self.labels: list[str] = []
        self.index: dict[str, int] = {}

    def add(self, name: str) -> int:
        self.index[name] = len(self.labels)
        self.labels.append(name)
        return self.index[name]

    def __getitem__(self, name: str) -> int:
        return self.index[name]


# ---------------------------------------------------------------------------
# SAT -> 3SAT


def sat_to_3sat(x: SspInstance):
    """Split long clauses with chained helpers and pad short ones.

    A clause ``(l1 ∨ … ∨ lm)`` with m ≥ 4 becomes ``(l1 ∨ l2 ∨ h)`` followed by
    the split of ``(¬h ∨ l3 ∨ … ∨ lm)``.  Clauses of length 2, 1 and 0 are
    padded with fresh helpers in every sign combination, which forces nothing
    on the original variables.  Helpers are numbered after the originals, in
    clause order and then split depth.
    """
    p: CnfFormula = x.payload
    next_var = p.num_vars
    out: list[tuple[int, ...]] = []

    def fresh() -> int:
        nonlocal next_var
        next_var += 1
        return next_var

    for clause in p.clauses:
        rest = list(clause)
        if len(rest) >= 4:
            while len(rest) > 3:
                h = fresh()
                out.append((rest[0], rest[1], h))
                rest = [-h, *rest[2:]]
            out.append(tuple(rest))
        elif len(rest) == 3:
            out.append(tuple(rest))
        else:
            helpers = [fresh() for _ in range(3 - len(rest))]
            for signs in range(1 << len(helpers)):
                pad = [-h if signs >> i & 1 else h for i, h in enumerate(helpers)]
                out.append((*rest, *pad))
    y = SspInstance(K.THREE_SATISFIABILITY, CnfFormula.of(next_var, out))
    return y, _literal_map(p.num_vars, lit)


# ---------------------------------------------------------------------------
# 3SAT -> graph problems


def _literal_clause_graph(p: CnfFormula, wire_to_negation: bool):
    """Literal edges x_i–¬x_i plus one triangle per clause.

    Triangle corner q of clause j is joined to the vertex of its literal (for
    vertex cover) or of the negated literal (for independent set).
    """
    names = _Names()
    for v in range(1, p.num_vars + 1):
        names.add(_literal_name(v))
        names.add(_literal_name(-v))
    edges = [(2 * i, 2 * i + 1) for i in range(p.num_vars)]
    for j, clause in enumerate(p.clauses, start=1):
        corners = [names.add(f"c{j}_{q}") for q in range(1, 4)]
        edges += [(corners[0], corners[1]), (corners[0], corners[2]), (corners[1], corners[2])]
        for corner, literal in zip(corners, clause):
            target = -literal if wire_to_negation else literal
            edges.append((corner, _literal_slot(target)))
    return names.labels, edges


def three_sat_to_vertex_cover(x: SspInstance):
    p: CnfFormula = x.payload
    labels, edges = _literal_clause_graph(p, wire_to_negation=False)
    k = p.num_vars + 2 * len(p.clauses)
    y = SspInstance(K.VERTEX_COVER, GraphProblem.of(len(labels), edges, k, labels))
    return y, _literal_map(p.num_vars, lambda l: vertex(_literal_slot(l)))


def three_sat_to_independent_set(x: SspInstance):
    p: CnfFormula = x.payload
    labels, edges = _literal_clause_graph(p, wire_to_negation=True)
    k = p.num_vars + len(p.clauses)
    y = SspInstance(K.INDEPENDENT_SET, GraphProblem.of(len(labels), edges, k, labels))
    return y, _literal_map(p.num_vars, lambda l: vertex(_literal_slot(l)))


def independent_set_to_clique(x: SspInstance):
    p: GraphProblem = x.payload
    y = SspInstance(K.CLIQUE, GraphProblem.of(p.num_vertices, p.complement_edges(), p.k, p.labels))
    return y, {vertex(v): vertex(v) for v in range(p.num_vertices)}


# ---------------------------------------------------------------------------
# Vertex Cover -> covering, feedback and facility problems


def _vertex_identity(p: GraphProblem, ns: str = "v") -> dict[ElementId, ElementId]:
    return {vertex(v): ElementId(ns, (v,)) for v in range(p.num_vertices)}


def _vertex_names(p: GraphProblem) -> list[str]:
    return list(p.labels) if p.labels else [f"v{v}" for v in range(p.num_vertices)]


def vertex_cover_to_dominating_set(x: SspInstance):
    """Keep G and add, for every edge, apex vertices adjacent to both ends.

    Too many apexes per edge to dominate them one by one, so any small
    dominating set must pick an endpoint of every edge.  The bound is capped
    at |V|, which never changes the cover side.  Isolated vertices would
    otherwise have to dominate themselves, so a hub adjacent to all of them
    is added and forced into every solution by pendant leaves.
    """
    p: GraphProblem = x.payload
    n = p.num_vertices
    k = min(p.k, n)
    names = _Names()
    for name in _vertex_names(p):
        names.add(name)
    edges = list(p.edges)
    degree = [0] * n
    for u, v in p.edges:
        degree[u] += 1
        degree[v] += 1
    isolated = [v for v in range(n) if degree[v] == 0]
    apexes = n + 2 if isolated else n + 1
    for u, v in p.edges:
        for a in range(1, apexes + 1):
            w = names.add(f"apex_{u}_{v}_{a}")
            edges += [(u, w), (v, w)]
    if isolated:
        hub = names.add("hub")
        edges += [(hub, v) for v in isolated]
        for a in range(1, n + 3):
            edges.append((hub, names.add(f"leaf_{a}")))
        k += 1
    y = SspInstance(K.DOMINATING_SET, GraphProblem.of(len(names.labels), edges, k, names.labels))
    return y, _vertex_identity(p)


def vertex_cover_to_set_cover(x: SspInstance):
    p: GraphProblem = x.payload
    sets = [[j for j, e in enumerate(p.edges) if v in e] for v in range(p.num_vertices)]
    y = SspInstance(K.SET_COVER, SetSystem.of(len(p.edges), sets, p.k))
    return y, _vertex_identity(p, "set")


def vertex_cover_to_hitting_set(x: SspInstance):
    p: GraphProblem = x.payload
    y = SspInstance(K.HITTING_SET, SetSystem.of(p.num_vertices, p.edges, p.k))
    return y, _vertex_identity(p, "el")


def vertex_cover_to_feedback_vertex_set(x: SspInstance):
    p: GraphProblem = x.payload
    arcs = [a for u, v in p.edges for a in ((u, v), (v, u))]
    y = SspInstance(K.FEEDBACK_VERTEX_SET, DigraphProblem.of(p.num_vertices, arcs, p.k, p.labels))
    return y, _vertex_identity(p)


def vertex_cover_to_feedback_arc_set(x: SspInstance):
    """Split v into v0 -> v1; join v1 to w0 and w1 to v0 for every edge {v, w}.

    Each connection is |V|+1 parallel once-subdivided paths, so cutting
    connections is never cheaper than cutting a split arc (v0, v1).  The
    bound is capped at |V|.
    """
    p: GraphProblem = x.payload
    n = p.num_vertices
    names = _Names()
    base = _vertex_names(p)
    for v in range(n):
        names.add(f"{base[v]}_in")
        names.add(f"{base[v]}_out")
    arcs = [(2 * v, 2 * v + 1) for v in range(n)]
    for u, v in p.edges:
        for a, b in ((u, v), (v, u)):
            for c in range(1, n + 2):
                mid = names.add(f"sub_{a}_{b}_{c}")
                arcs += [(2 * a + 1, mid), (mid, 2 * b)]
    y = SspInstance(K.FEEDBACK_ARC_SET, DigraphProblem.of(len(names.labels), arcs, min(p.k, n), names.labels))
    return y, {vertex(v): arc(2 * v, 2 * v + 1) for v in range(n)}


def _incidence_costs(p: GraphProblem) -> tuple[tuple[int, ...], ...]:
    far = p.num_vertices + 1
    return tuple(tuple(0 if v in e else far for v in range(p.num_vertices)) for e in p.edges)


def vertex_cover_to_ufl(x: SspInstance):
    """Clients are edges, facilities are vertices, opening cost 1 each."""
    p: GraphProblem = x.payload
    n = p.num_vertices
    payload = FacilityProblem(len(p.edges), n, _incidence_costs(p), min(p.k, n), opening=(1,) * n)
    return SspInstance(K.UNCAPACITATED_FACILITY_LOCATION, payload), _vertex_identity(p, "fac")


def vertex_cover_to_p_center(x: SspInstance):
    p: GraphProblem = x.payload
    payload = FacilityProblem(len(p.edges), p.num_vertices, _incidence_costs(p), 0, p=p.k)
    return SspInstance(K.P_CENTER, payload), _vertex_identity(p, "fac")


def vertex_cover_to_p_median(x: SspInstance):
    p: GraphProblem = x.payload
    payload = FacilityProblem(len(p.edges), p.num_vertices, _incidence_costs(p), 0, p=p.k)
    return SspInstance(K.P_MEDIAN, payload), _vertex_identity(p, "fac")


# ---------------------------------------------------------------------------
# number problems


def three_sat_to_subset_sum(x: SspInstance):
    """Digit table: one column per variable (target 1), one per clause (target 4).

    Numbers come in the order a_1, ¬a_1, a_2, ¬a_2, … followed by two slack
    numbers per clause carrying 1 and 2 in its column.
    """
    p: CnfFormula = x.payload
    n, m = p.num_vars, len(p.clauses)
    width = n + m

    def number(digits: dict[int, int]) -> int:
        return check_int(sum(d * SUBSET_SUM_BASE ** (width - 1 - col) for col, d in digits.items()), "digit number")

    numbers = []
    for v in range(1, n + 1):
        for literal in (v, -v):
            digits = {v - 1: 1}
            for j, clause in enumerate(p.clauses):
                if literal in clause:
                    digits[n + j] = 1
            numbers.append(number(digits))
    for j in range(m):
        numbers += [number({n + j: 1}), number({n + j: 2})]
    target = number({**{i: 1 for i in range(n)}, **{n + j: 4 for j in range(m)}})
    y = SspInstance(K.SUBSET_SUM, SubsetSumProblem(tuple(numbers), target))
    return y, _literal_map(n, lambda l: item("num", _literal_slot(l)))


def subset_sum_to_knapsack(x: SspInstance):
    p: SubsetSumProblem = x.payload
    y = SspInstance(K.KNAPSACK, KnapsackProblem(p.numbers, p.numbers, p.target, p.target))
    return y, {item("num", i): item("obj", i) for i in range(len(p.numbers))}


def subset_sum_to_partition(x: SspInstance):
    """Append M+1 and Σ+1−M; the side holding the last number must sum to M.

    Targets above Σ have no solutions either way and are capped at Σ+1 so the
    appended numbers stay nonnegative.
    """
    p: SubsetSumProblem = x.payload
    total = check_int(sum(p.numbers), "number sum")
    target = min(p.target, total + 1)
    numbers = (*p.numbers, check_int(target + 1), check_int(total + 1 - target))
    y = SspInstance(K.PARTITION, PartitionProblem(numbers))
    return y, {item("num", i): item("num", i) for i in range(len(p.numbers))}


def partition_to_two_machine_scheduling(x: SspInstance):
    p: PartitionProblem = x.payload
    y = SspInstance(K.TWO_MACHINE_SCHEDULING, SchedulingProblem(p.numbers, sum(p.numbers) // 2))
    return y, {item("num", i): item("job", i) for i in range(len(p.numbers))}


# ---------------------------------------------------------------------------
# Hamiltonian problems


def three_sat_to_dham_path(x: SspInstance):
    """One two-way row of 4·|C| vertices per variable, stacked between s and t.

    Left-to-right traversal of row i means x_i is true.  Both ends of a row
    are joined to a link vertex above and below it (s and t for the outer
    rows).  Joining row ends to row ends directly would let a path leave a
    row early and come back through a clause vertex.  Clause j is a detour
    vertex between positions 4j−2 and 4j−1 of each of its variables' rows,
    entered in the direction that makes its literal true.
    """
    p: CnfFormula = x.payload
    n, m = p.num_vars, len(p.clauses)
    length = 4 * max(m, 1)
    names = _Names()
    s, t = names.add("s"), names.add("t")
    rows = [[names.add(f"x{i}_{r}") for r in range(1, length + 1)] for i in range(1, n + 1)]
    clause_vertex = [names.add(f"C{j}") for j in range(1, m + 1)]
    arcs: list[tuple[int, int]] = []
    for row in rows:
        for a, b in zip(row, row[1:]):
            arcs += [(a, b), (b, a)]
    # rows are chained through single link vertices s, link_1, …, link_{n-1}, t
    links = [s] + [names.add(f"link{i}") for i in range(1, n)] + [t]
    for i, row in enumerate(rows):
        arcs += [(links[i], row[0]), (links[i], row[-1]), (row[0], links[i + 1]), (row[-1], links[i + 1])]
    if n == 0:
        arcs.append((s, t))
    for j, clause in enumerate(p.clauses, start=1):
        c = clause_vertex[j - 1]
        for literal in clause:
            row = rows[abs(literal) - 1]
            enter, leave = row[4 * j - 3], row[4 * j - 2]  # positions 4j−2 and 4j−1
            if literal < 0:
                enter, leave = leave, enter
            arcs += [(enter, c), (c, leave)]
    payload = HamPathProblem(len(names.labels), tuple(sorted(set(arcs))), s, t, tuple(names.labels))
    mapping = {}
    for i, row in enumerate(rows, start=1):
        mapping[lit(i)] = arc(row[0], row[1])
        mapping[lit(-i)] = arc(row[1], row[0])
    return SspInstance(K.DIRECTED_HAMILTONIAN_PATH, payload), mapping


def dham_path_to_dham_cycle(x: SspInstance):
    """Close the path with the arc (t, s).

    This is only sound when s has no entering and t no leaving arcs;
    otherwise the cycle is routed through a fresh vertex t -> u -> s.
    """
    p = x.payload
    arcs = list(p.arcs)
    labels = list(p.labels) if p.labels else [f"v{v}" for v in range(p.num_vertices)]
    n = p.num_vertices
    if any(v == p.source for _, v in arcs) or any(u == p.sink for u, _ in arcs):
        labels.append("closer")
        arcs += [(p.sink, n), (n, p.source)]
        n += 1
    else:
        arcs.append((p.sink, p.source))
    y = SspInstance(K.DIRECTED_HAMILTONIAN_CYCLE, HamCycleProblem(n, tuple(sorted(arcs)), tuple(labels)))
    return y, {arc(u, v): arc(u, v) for u, v in p.arcs}


def dham_cycle_to_uham_cycle(x: SspInstance):
    """Replace v by the path v_in – v – v_out; arc (v, w) becomes {v_out, w_in}."""
    p: HamCycleProblem = x.payload
    base = list(p.labels) if p.labels else [f"v{v}" for v in range(p.num_vertices)]
    labels = [f"{name}{suffix}" for name in base for suffix in ("_in", "", "_out")]
    edges = [(3 * v, 3 * v + 1) for v in range(p.num_vertices)]
    edges += [(3 * v + 1, 3 * v + 2) for v in range(p.num_vertices)]
    edges += [tuple(sorted((3 * v + 2, 3 * w))) for v, w in p.arcs]
    y = SspInstance(K.UNDIRECTED_HAMILTONIAN_CYCLE, UHamCycleProblem(3 * p.num_vertices, tuple(sorted(edges)), tuple(labels)))
    return y, {arc(v, w): edge(3 * v + 2, 3 * w) for v, w in p.arcs}


def uham_cycle_to_tsp(x: SspInstance):
    """Complete the graph: original edges weigh 0, fill edges 1, bound 0."""
    p: UHamCycleProblem = x.payload
    present = set(p.edges)
    n = p.num_vertices
    weights = tuple((u, v, 0 if (u, v) in present else 1) for u in range(n) for v in range(u + 1, n))
    y = SspInstance(K.TRAVELING_SALESMAN, TspProblem(n, weights, 0, p.labels))
    return y, {edge(u, v): edge(u, v) for u, v in p.edges}


# ---------------------------------------------------------------------------
# disjoint paths


def three_sat_to_2ddp(x: SspInstance):
    """Path 1 picks one literal corridor per variable; path 2 visits the clauses.

    Every literal owns a corridor of 4·|C| vertices between x^s_i and x^t_i,
    and the variable gadgets are chained from s1 to t1.  Clause j is the pair
    C^1_j -> C^2_j on the chain s2 -> … -> t2 and may pass through the
    corridor of the negation of any of its literals, which is free exactly
    when that literal is true.  Clause j taps corridor positions
    4(|C|−j)+1 and 4(|C|−j)+2: later clauses sit earlier on each corridor,
    so path 2 cannot run along a corridor to skip ahead.

    Known unsound: clause paths that share a corridor can cross-route
    through each other's taps, so some unsatisfiable formulas get a routing
    and some models lose theirs.  ``((1,2,-3),(2,-3,-1),(-3,2,1))`` is a
    small counterexample.  The construction is kept so that verification
    reports the failure instead of hiding it.
    """
    p: CnfFormula = x.payload
    n, m = p.num_vars, len(p.clauses)
    length = 4 * max(m, 1)
    names = _Names()
    s1, t1, s2, t2 = (names.add(name) for name in ("s1", "t1", "s2", "t2"))
    start, finish, corridor = {}, {}, {}
    for i in range(1, n + 1):
        start[i] = names.add(f"x{i}_s")
        finish[i] = names.add(f"x{i}_t")
        for literal in (i, -i):
            corridor[literal] = [names.add(f"{_literal_name(literal)}_{r}") for r in range(1, length + 1)]
    c1 = [names.add(f"C{j}_1") for j in range(1, m + 1)]
    c2 = [names.add(f"C{j}_2") for j in range(1, m + 1)]
    arcs: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        for literal in (i, -i):
            path = corridor[literal]
            arcs += [(start[i], path[0]), (path[-1], finish[i])]
            arcs += list(zip(path, path[1:]))
        if i < n:
            arcs.append((finish[i], start[i + 1]))
    arcs += [(s1, start[1]), (finish[n], t1)] if n else [(s1, t1)]
    if m:
        arcs += [(s2, c1[0]), (c2[-1], t2)]
        arcs += [(c2[j], c1[j + 1]) for j in range(m - 1)]
    else:
        arcs.append((s2, t2))
    for j, clause in enumerate(p.clauses, start=1):
        entry = 4 * (m - j)  # 0-based position of 4(|C|−j)+1
        for literal in clause:
            path = corridor[-literal]
            arcs += [(c1[j - 1], path[entry]), (path[entry + 1], c2[j - 1])]
    payload = DisjointPathsProblem(
        len(names.labels), tuple(sorted(set(arcs))), ((s1, t1), (s2, t2)), tuple(names.labels)
    )
    mapping = {lit(l): arc(start[abs(l)], corridor[l][0]) for i in range(1, n + 1) for l in (i, -i)}
    return SspInstance(K.DIRECTED_TWO_DISJOINT_PATH, payload), mapping


def two_ddp_to_kddp(x: SspInstance, k: int = 3):
    """Add k−2 terminal pairs, each joined by a direct arc."""
    if k < 2:
        raise ValueError("k must be at least 2")
    p: DisjointPathsProblem = x.payload
    labels = list(p.labels) if p.labels else [f"v{v}" for v in range(p.num_vertices)]
    n = p.num_vertices
    arcs = list(p.arcs)
    pairs = list(p.pairs)
    for i in range(3, k + 1):
        s, t = n, n + 1
        labels += [f"s{i}", f"t{i}"]
        arcs.append((s, t))
        pairs.append((s, t))
        n += 2
    payload = DisjointPathsProblem(n, tuple(sorted(arcs)), tuple(pairs), tuple(labels))
    return SspInstance(K.DIRECTED_K_DISJOINT_PATH, payload), {arc(u, v): arc(u, v) for u, v in p.arcs}


# ---------------------------------------------------------------------------
# Steiner tree


def three_sat_to_steiner_tree(x: SspInstance):
    """Diamond chain s = v_0, {ℓ_i, ¬ℓ_i}, v_i, …, v_n = t plus clause terminals.

    Each clause terminal reaches each of its literal vertices through a path
    of |L|+1 unit edges.  With k = |L| + |C|·(|L|+1) a tree can afford the
    chain through one literal per variable and one clause path per clause,
    which must end at a chosen literal.
    """
    p: CnfFormula = x.payload
    n = p.num_vars
    width = 2 * n
    names = _Names()
    chain = [names.add("s")]
    literal_vertex = {}
    for i in range(1, n + 1):
        literal_vertex[i] = names.add(_literal_name(i))
        literal_vertex[-i] = names.add(_literal_name(-i))
        chain.append(names.add("t" if i == n else f"v{i}"))
    edges = []
    for i in range(1, n + 1):
        for l in (i, -i):
            edges += [(chain[i - 1], literal_vertex[l]), (literal_vertex[l], chain[i])]
    terminals = [chain[0], chain[-1]] if n else [chain[0]]
    for j, clause in enumerate(p.clauses, start=1):
        c = names.add(f"C{j}")
        terminals.append(c)
        for l in clause:
            prev = literal_vertex[l]
            for step in range(1, width + 1):
                mid = names.add(f"C{j}_{_literal_name(l)}_{step}")
                edges.append((prev, mid))
                prev = mid
            edges.append((prev, c))
    k = width + len(p.clauses) * (width + 1)
    payload = SteinerProblem(
        len(names.labels),
        tuple(sorted((min(u, v), max(u, v), 1) for u, v in edges)),
        tuple(terminals),
        k,
        tuple(names.labels),
    )
    mapping = {lit(l): edge(chain[abs(l) - 1], literal_vertex[l]) for i in range(1, n + 1) for l in (i, -i)}
    return SspInstance(K.STEINER_TREE, payload), mapping


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    source: K
    target: K
    builder: Callable
    summary: str


_ENTRIES = [
    CatalogEntry("sat_to_3sat", K.SATISFIABILITY, K.THREE_SATISFIABILITY, sat_to_3sat,
                 "split long clauses with chained helpers, pad short ones"),
    CatalogEntry("3sat_to_vertex_cover", K.THREE_SATISFIABILITY, K.VERTEX_COVER, three_sat_to_vertex_cover,
                 "literal edges plus clause triangles, k = |L|/2 + 2|C|"),
    CatalogEntry("vertex_cover_to_dominating_set", K.VERTEX_COVER, K.DOMINATING_SET,
                 vertex_cover_to_dominating_set, "apex vertices on every edge"),
    CatalogEntry("vertex_cover_to_set_cover", K.VERTEX_COVER, K.SET_COVER, vertex_cover_to_set_cover,
                 "vertices become sets of incident edges"),
    CatalogEntry("vertex_cover_to_hitting_set", K.VERTEX_COVER, K.HITTING_SET, vertex_cover_to_hitting_set,
                 "edges become two-element sets"),
    CatalogEntry("vertex_cover_to_feedback_vertex_set", K.VERTEX_COVER, K.FEEDBACK_VERTEX_SET,
                 vertex_cover_to_feedback_vertex_set, "every edge becomes a 2-cycle"),
    CatalogEntry("vertex_cover_to_feedback_arc_set", K.VERTEX_COVER, K.FEEDBACK_ARC_SET,
                 vertex_cover_to_feedback_arc_set, "split vertices joined by subdivided arcs"),
    CatalogEntry("vertex_cover_to_ufl", K.VERTEX_COVER, K.UNCAPACITATED_FACILITY_LOCATION, vertex_cover_to_ufl,
                 "edges are clients served free by their endpoints"),
    CatalogEntry("vertex_cover_to_p_center", K.VERTEX_COVER, K.P_CENTER, vertex_cover_to_p_center,
                 "p = k, radius bound 0"),
    CatalogEntry("vertex_cover_to_p_median", K.VERTEX_COVER, K.P_MEDIAN, vertex_cover_to_p_median,
                 "p = k, total service bound 0"),
    CatalogEntry("3sat_to_independent_set", K.THREE_SATISFIABILITY, K.INDEPENDENT_SET,
                 three_sat_to_independent_set, "clause triangles wired to negated literals, k = |L|/2 + |C|"),
    CatalogEntry("independent_set_to_clique", K.INDEPENDENT_SET, K.CLIQUE, independent_set_to_clique,
                 "graph complement"),
    CatalogEntry("3sat_to_subset_sum", K.THREE_SATISFIABILITY, K.SUBSET_SUM, three_sat_to_subset_sum,
                 "base-10 digit table, targets 1 and 4"),
    CatalogEntry("subset_sum_to_knapsack", K.SUBSET_SUM, K.KNAPSACK, subset_sum_to_knapsack,
                 "profit = weight = a_i, P = W = M"),
    CatalogEntry("subset_sum_to_partition", K.SUBSET_SUM, K.PARTITION, subset_sum_to_partition,
                 "append M+1 and Σ+1−M"),
    CatalogEntry("partition_to_two_machine_scheduling", K.PARTITION, K.TWO_MACHINE_SCHEDULING,
                 partition_to_two_machine_scheduling, "threshold Σ/2"),
    CatalogEntry("3sat_to_dham_path", K.THREE_SATISFIABILITY, K.DIRECTED_HAMILTONIAN_PATH, three_sat_to_dham_path,
                 "two-way variable rows of 4|C| vertices with clause detours"),
    CatalogEntry("dham_path_to_dham_cycle", K.DIRECTED_HAMILTONIAN_PATH, K.DIRECTED_HAMILTONIAN_CYCLE,
                 dham_path_to_dham_cycle, "close the path from t back to s"),
    CatalogEntry("dham_cycle_to_uham_cycle", K.DIRECTED_HAMILTONIAN_CYCLE, K.UNDIRECTED_HAMILTONIAN_CYCLE,
                 dham_cycle_to_uham_cycle, "three-way vertex split"),
    CatalogEntry("uham_cycle_to_tsp", K.UNDIRECTED_HAMILTONIAN_CYCLE, K.TRAVELING_SALESMAN, uham_cycle_to_tsp,
                 "complete with weight-1 fill edges, k = 0"),
    CatalogEntry("3sat_to_2ddp", K.THREE_SATISFIABILITY, K.DIRECTED_TWO_DISJOINT_PATH, three_sat_to_2ddp,
                 "literal corridors for path 1, clause chain for path 2"),
    CatalogEntry("2ddp_to_kddp", K.DIRECTED_TWO_DISJOINT_PATH, K.DIRECTED_K_DISJOINT_PATH, two_ddp_to_kddp,
                 "k−2 extra pairs joined by direct arcs"),
    CatalogEntry("3sat_to_steiner_tree", K.THREE_SATISFIABILITY, K.STEINER_TREE, three_sat_to_steiner_tree,
                 "diamond chain plus clause paths of length |L|+1"),
]

CATALOG: dict[str, CatalogEntry] = {e.id: e for e in _ENTRIES}


def get_reduction(reduction_id: str, **params) -> SspReduction:
    """Look up a catalog reduction by id; ``2ddp_to_kddp`` accepts ``k``."""
    try:
        entry = CATALOG[reduction_id]
    except KeyError:
        raise KindMismatch(f"unknown reduction {reduction_id!r}") from None
    if params:
        builder = lambda x: entry.builder(x, **params)  # noqa: E731
    else:
        builder = entry.builder
    return SspReduction(entry.id, entry.source, entry.target, builder, "catalog", entry.summary)


def all_reductions() -> list[SspReduction]:
    return [get_reduction(e.id) for e in _ENTRIES]


def find_path(source: K, target: K) -> list[str]:
    """Reduction ids leading from ``source`` to ``target`` (breadth-first)."""
    if source is target:
        return []
    parent: dict[K, CatalogEntry] = {}
    queue = deque([source])
    seen = {source}
    while queue:
        kind = queue.popleft()
        for e in _ENTRIES:
            if e.source is kind and e.target not in seen:
                seen.add(e.target)
                parent[e.target] = e
                queue.append(e.target)
    if target not in parent:
        raise KindMismatch(f"no reduction path from {source.value} to {target.value}")
    path = []
    kind = target
    while kind is not source:
        path.append(parent[kind].id)
        kind = parent[kind].source
    return path[::-1]


def chain(ids: list[str]) -> SspReduction:
    return compose_all(get_reduction(i) for i in ids)
