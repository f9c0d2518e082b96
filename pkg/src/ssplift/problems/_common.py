"""Shared helpers for the problem modules: element ids, body parsing, search."""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence

from ssplift.core import Budget, ElementId, ParseError, check_int, IntegerOverflow


# ---------------------------------------------------------------------------
# element id constructors


def lit(literal: int) -> ElementId:
    """Element id of a signed DIMACS literal: ``x_v`` is (v, 0), ``¬x_v`` is (v, 1)."""
    return ElementId("lit", (abs(literal), 0 if literal > 0 else 1))


def lit_value(e: ElementId) -> int:
    var, neg = e.idx
    return -var if neg else var


def vertex(v: int) -> ElementId:
    return ElementId("v", (v,))


def edge(u: int, v: int) -> ElementId:
    return ElementId("e", (u, v) if u <= v else (v, u))


def arc(u: int, v: int) -> ElementId:
    return ElementId("a", (u, v))


def item(ns: str, i: int) -> ElementId:
    return ElementId(ns, (i,))


# ---------------------------------------------------------------------------
# body parsing


class Body:
    """Keyword-indexed view of the body lines of an instance file."""

    def __init__(self, lines: list[tuple[int, list[str]]], allowed: Iterable[str]):
        self.allowed = set(allowed)
        self.lines: dict[str, list[tuple[int, list[str]]]] = {}
        for lineno, tokens in lines:
            key = tokens[0]
            if key not in self.allowed:
                raise ParseError(f"unexpected keyword {key!r}", lineno, 1)
            self.lines.setdefault(key, []).append((lineno, tokens[1:]))

    def _one(self, key: str, required: bool) -> tuple[int, list[str]] | None:
        entries = self.lines.get(key, [])
        if len(entries) > 1:
            raise ParseError(f"keyword {key!r} given more than once", entries[1][0], 1)
        if not entries:
            if required:
                raise ParseError(f"missing required line {key!r}")
            return None
        return entries[0]

    def int(self, key: str, default: int | None = None) -> int:
        entry = self._one(key, default is None)
        if entry is None:
            return default  # type: ignore[return-value]
        lineno, args = entry
        if len(args) != 1:
            raise ParseError(f"{key!r} expects exactly one integer", lineno, 1)
        return parse_int(args[0], lineno, 2)

    def ints(self, key: str, required: bool = True) -> tuple[int, ...] | None:
        entry = self._one(key, required)
        if entry is None:
            return None
        lineno, args = entry
        return tuple(parse_int(a, lineno, col) for col, a in enumerate(args, start=2))

    def rows(self, key: str, arity: int | None = None) -> list[tuple[int, ...]]:
        out = []
        for lineno, args in self.lines.get(key, []):
            if arity is not None and len(args) != arity:
                raise ParseError(f"{key!r} expects {arity} integers", lineno, 1)
            out.append(tuple(parse_int(a, lineno, col) for col, a in enumerate(args, start=2)))
        return out

    def labels(self) -> dict[int, str]:
        out: dict[int, str] = {}
        for lineno, args in self.lines.get("label", []):
            if len(args) != 2:
                raise ParseError("'label' expects a vertex index and a name", lineno, 1)
            v = parse_int(args[0], lineno, 2)
            if v in out:
                raise ParseError(f"vertex {v} labelled twice", lineno, 1)
            out[v] = args[1]
        return out


def parse_int(token: str, lineno: int = 0, column: int = 1) -> int:
    """``column`` counts whitespace-separated tokens from 1."""
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected an integer, found {token!r}", lineno, column) from None
    try:
        return check_int(value)
    except IntegerOverflow as exc:
        raise IntegerOverflow(f"line {lineno}: {exc}") from None


def labels_tuple(labels: dict[int, str], n: int) -> tuple[str, ...]:
    if not labels:
        return ()
    return tuple(labels.get(v, f"v{v}") for v in range(n))


def label_lines(labels: Sequence[str]) -> list[str]:
    return [f"label {v} {name}" for v, name in enumerate(labels)]


def check_labels(labels: Sequence[str], n: int, out: list[str]) -> None:
    if labels and len(labels) != n:
        out.append("label count differs from vertex count")
    for name in labels:
        if not name or any(ch.isspace() for ch in name) or name.startswith("#"):
            out.append(f"invalid vertex label {name!r}")
            break


# ---------------------------------------------------------------------------
# generic searches


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_covers(
    covers: Sequence[int],
    required: int,
    max_size: int,
    budget: Budget,
) -> Iterator[int]:
    """Yield every subset (as a bitmask over candidates) of size ≤ ``max_size``
    whose union of ``covers`` contains ``required``.

    Candidates are decided in index order.  A branch dies as soon as some
    required bit has no undecided candidate left, or when a packing of
    pairwise candidate-disjoint uncovered requirements proves that more than
    ``max_size`` further picks are needed.
    """
    n = len(covers)
    if max_size < 0:
        return
    # candidates able to cover each required bit
    owners: dict[int, int] = {}
    for i, c in enumerate(covers):
        for b in iter_bits(c & required):
            owners[b] = owners.get(b, 0) | (1 << i)
    for b in iter_bits(required):
        if b not in owners:
            return
    # requirement bits whose last owner is candidate i
    closing = [0] * n
    for b, own in owners.items():
        closing[own.bit_length() - 1] |= 1 << b

    def lower_bound(uncovered: int, undecided: int) -> int:
        used = 0
        count = 0
        for b in iter_bits(uncovered):
            own = owners[b] & undecided
            if own & used == 0:
                used |= own
                count += 1
        return count

    full = (1 << n) - 1

    def rec(i: int, chosen: int, covered: int, size: int) -> Iterator[int]:
        budget.tick()
        if i == n:
            if covered & required == required:
                yield chosen
            return
        undecided = full & ~((1 << i) - 1)
        uncovered = required & ~covered
        if uncovered and size + lower_bound(uncovered, undecided) > max_size:
            return
        if size < max_size:
            c2 = covered | covers[i]
            if closing[i] & ~c2 == 0:
                yield from rec(i + 1, chosen | (1 << i), c2, size + 1)
        if closing[i] & ~covered == 0:
            yield from rec(i + 1, chosen, covered, size)

    yield from rec(0, 0, 0, 0)


def min_cover_at_most(
    covers: Sequence[int],
    required: int,
    limit: int,
    budget: Budget,
) -> bool:
    """Decide whether ``limit`` candidates can cover ``required``.

    Branches on the uncovered requirement with the fewest owners and prunes
    with a greedy packing bound.  Candidates whose coverage (restricted to the
    requirement) is contained in another candidate's are dropped first, which
    never changes the answer.
    """
    if not required:
        return True
    cands = sorted({c & required for c in covers if c & required}, key=lambda c: -c.bit_count())
    by_bit: dict[int, list[int]] = {}
    kept: list[int] = []
    for c in cands:
        low = (c & -c).bit_length() - 1
        if any(c | k == k for k in by_bit.get(low, ())):
            continue
        kept.append(c)
        for b in iter_bits(c):
            by_bit.setdefault(b, []).append(c)
    owners = by_bit
    reach = {b: _union(own) for b, own in owners.items()}
    if any(b not in owners for b in iter_bits(required)):
        return False

    def rec(uncovered: int, left: int) -> bool:
        budget.tick()
        if not uncovered:
            return True
        if left <= 0:
            return False
        best: list[int] | None = None
        used = 0
        packing = 0
        for b in iter_bits(uncovered):
            own = owners[b]
            if best is None or len(own) < len(best):
                best = own
            r = reach[b]
            if r & used == 0:
                used |= r
                packing += 1
                if packing > left:
                    return False
        assert best is not None
        for c in best:
            if rec(uncovered & ~c, left - 1):
                return True
        return False

    return rec(required, limit)


def _union(masks: Iterable[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def find_cycle(n: int, succ: Sequence[Sequence[int]], alive: Callable[[int, int], bool]) -> list[tuple[int, int]] | None:
    """Return the arcs of some directed cycle among arcs accepted by ``alive``."""
    color = [0] * n
    parent: list[tuple[int, int] | None] = [None] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if not alive(u, w):
                    continue
                if color[w] == 0:
                    color[w] = 1
                    parent[w] = (u, w)
                    stack.append((w, iter(succ[w])))
                    advanced = True
                    break
                if color[w] == 1:
                    cycle = [(u, w)]
                    x = u
                    while x != w:
                        p = parent[x]
                        assert p is not None
                        cycle.append(p)
                        x = p[0]
                    cycle.reverse()
                    return cycle
            if not advanced:
                color[u] = 2
                stack.pop()
    return None


def is_acyclic(n: int, arcs: Iterable[tuple[int, int]]) -> bool:
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        succ[u].append(v)
        indeg[v] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        u = queue.pop()
        seen += 1
        for w in succ[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == n


def is_connected(vertices: set[int], edges: Iterable[tuple[int, int]]) -> bool:
    if not vertices:
        return True
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)
