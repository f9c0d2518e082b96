"""Universes, instances, solution families and bounded enumeration.

Every problem in the catalog is a subset search problem: an instance owns a
finite universe of :class:`ElementId` values and a membership predicate that
decides which subsets of the universe are solutions.  Linear optimization
problems additionally expose a feasibility predicate, a linear cost and a
threshold; their solution set is the set of feasible subsets whose cost does
not exceed the threshold.

Kind-specific behaviour lives in :class:`KindSpec` subclasses registered by
:mod:`ssplift.problems`.  This module only knows the generic contract.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, NamedTuple, Protocol

INT_MIN = -(1 << 63)
INT_MAX = (1 << 63) - 1
DEFAULT_BUDGET = 1 << 20


# ---------------------------------------------------------------------------
# errors


class SspError(Exception):
    """Base class of every error raised by the package."""

    exit_code = 1


class ParseError(SspError):
    exit_code = 2

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")


class ValidationError(SspError):
    exit_code = 2

    def __init__(self, diagnostics: Iterable[str]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class ForeignElement(SspError):
    exit_code = 2


class KindMismatch(SspError):
    exit_code = 3


class NotAnLop(KindMismatch):
    pass


class FamilyMismatch(KindMismatch):
    pass


class PrefixMismatch(KindMismatch):
    pass


class IntegerOverflow(SspError):
    exit_code = 4


class ConstructionOverflow(IntegerOverflow):
    pass


class BudgetExceeded(SspError):
    exit_code = 5


class CapExceeded(BudgetExceeded):
    pass


class UndefinedRegret(SspError):
    exit_code = 6


def check_int(value: int, what: str = "integer") -> int:
    """Return ``value`` if it fits a signed 64-bit word, else raise."""
    if not INT_MIN <= value <= INT_MAX:
        raise IntegerOverflow(f"{what} {value} exceeds the signed 64-bit range")
    return value


# ---------------------------------------------------------------------------
# elements, universes, families


class ElementId(NamedTuple):
    """Canonical identifier of one universe element.

    ``ns`` is a short namespace tag (``lit``, ``v``, ``e``, ``a`` ...) and
    ``idx`` a tuple of integers.  Tuple ordering gives the canonical total
    order: namespace first, then the indices lexicographically.
    """

    ns: str
    idx: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.ns}:{','.join(str(i) for i in self.idx)}"

    @classmethod
    def parse(cls, token: str) -> "ElementId":
        ns, sep, rest = token.partition(":")
        if not sep or not ns or not ns.isidentifier():
            raise ParseError(f"malformed element id {token!r}")
        try:
            idx = tuple(int(part) for part in rest.split(",")) if rest else ()
        except ValueError:
            raise ParseError(f"malformed element id {token!r}") from None
        return cls(ns, idx)


def eid(ns: str, *idx: int) -> ElementId:
    return ElementId(ns, tuple(idx))


Subset = frozenset  # frozenset[ElementId]


def canonical_subset(subset: Iterable[ElementId]) -> tuple[ElementId, ...]:
    return tuple(sorted(set(subset)))


def format_subset(subset: Iterable[ElementId]) -> str:
    return "{" + " ".join(str(e) for e in canonical_subset(subset)) + "}"


def parse_subset(text: str) -> frozenset[ElementId]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"subset must be enclosed in braces: {text!r}")
    return frozenset(ElementId.parse(tok) for tok in text[1:-1].split())


class Universe:
    """Ordered, duplicate-free sequence of element ids in canonical order."""

    __slots__ = ("elements", "_index")

    def __init__(self, elements: Iterable[ElementId]):
        items = tuple(elements)
        ordered = tuple(sorted(set(items)))
        if len(ordered) != len(items):
            raise ValidationError(["universe contains duplicate element ids"])
        self.elements = ordered
        self._index = {e: i for i, e in enumerate(ordered)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Universe) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Universe({len(self.elements)} elements)"

    def index(self, element: ElementId) -> int:
        return self._index[element]

    def mask(self, subset: Iterable[ElementId]) -> int:
        m = 0
        for e in subset:
            try:
                m |= 1 << self._index[e]
            except KeyError:
                raise ForeignElement(f"{e} is not in the universe") from None
        return m

    def subset(self, mask: int) -> frozenset[ElementId]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.elements[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    def check(self, subset: Iterable[ElementId]) -> frozenset[ElementId]:
        s = frozenset(subset)
        for e in s:
            if e not in self._index:
                raise ForeignElement(f"{e} is not in the universe")
        return s

    def serialize(self) -> str:
        return " ".join(str(e) for e in self.elements)

    @classmethod
    def deserialize(cls, text: str) -> "Universe":
        return cls(ElementId.parse(tok) for tok in text.split())


@dataclass(frozen=True)
class SolutionFamily:
    """A canonical set of subsets plus a completeness flag.

    ``members`` is sorted: each subset is a sorted tuple and the family is
    sorted lexicographically, so equality is plain tuple equality.
    """

    members: tuple[tuple[ElementId, ...], ...]
    complete: bool = True

    @classmethod
    def of(cls, subsets: Iterable[Iterable[ElementId]], complete: bool = True) -> "SolutionFamily":
        canon = {canonical_subset(s) for s in subsets}
        return cls(tuple(sorted(canon)), complete)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[frozenset[ElementId]]:
        return (frozenset(m) for m in self.members)

    def __contains__(self, subset: object) -> bool:
        if not isinstance(subset, (set, frozenset, tuple, list)):
            return False
        return canonical_subset(subset) in self._lookup

    @cached_property
    def _lookup(self) -> frozenset[tuple[ElementId, ...]]:
        return frozenset(self.members)

    @property
    def status(self) -> str:
        return "complete" if self.complete else "budget-exceeded"

    def is_empty(self) -> bool:
        return not self.members

    def sets(self) -> set[frozenset[ElementId]]:
        return {frozenset(m) for m in self.members}

    def serialize(self) -> str:
        lines = [f"family {self.status} {len(self.members)}"]
        lines.extend("{" + " ".join(str(e) for e in m) + "}" for m in self.members)
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> "SolutionFamily":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty family text", 1, 1)
        head = lines[0].split()
        if len(head) != 3 or head[0] != "family" or head[1] not in ("complete", "budget-exceeded"):
            raise ParseError("malformed family header", 1, 1)
        count = int(head[2])
        if count != len(lines) - 1:
            raise ParseError(f"family header announces {count} members, found {len(lines) - 1}", 1, 1)
        members = [parse_subset(ln) for ln in lines[1:]]
        return cls.of(members, head[1] == "complete")


# ---------------------------------------------------------------------------
# budgets


class Budget:
    """Mutable candidate counter shared by one enumeration call."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit <= 0:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"enumeration budget of {self.limit} candidates exceeded")


def _as_budget(budget: int | Budget | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


# ---------------------------------------------------------------------------
# problem kinds


class ProblemKind(enum.Enum):
    SATISFIABILITY = "sat"
    THREE_SATISFIABILITY = "3sat"
    VERTEX_COVER = "vertex_cover"
    INDEPENDENT_SET = "independent_set"
    CLIQUE = "clique"
    DOMINATING_SET = "dominating_set"
    SET_COVER = "set_cover"
    HITTING_SET = "hitting_set"
    FEEDBACK_VERTEX_SET = "feedback_vertex_set"
    FEEDBACK_ARC_SET = "feedback_arc_set"
    UNCAPACITATED_FACILITY_LOCATION = "ufl"
    P_CENTER = "p_center"
    P_MEDIAN = "p_median"
    SUBSET_SUM = "subset_sum"
    KNAPSACK = "knapsack"
    PARTITION = "partition"
    TWO_MACHINE_SCHEDULING = "two_machine_scheduling"
    DIRECTED_HAMILTONIAN_PATH = "dham_path"
    DIRECTED_HAMILTONIAN_CYCLE = "dham_cycle"
    UNDIRECTED_HAMILTONIAN_CYCLE = "uham_cycle"
    TRAVELING_SALESMAN = "tsp"
    DIRECTED_TWO_DISJOINT_PATH = "2ddp"
    DIRECTED_K_DISJOINT_PATH = "kddp"
    STEINER_TREE = "steiner_tree"

    @classmethod
    def from_id(cls, kind_id: str) -> "ProblemKind":
        try:
            return cls(kind_id)
        except ValueError:
            raise ParseError(f"unknown problem kind {kind_id!r}") from None


class KindSpec:
    """Kind-specific behaviour of one catalog problem.

    Subclasses implement the boxed solution predicate, a kind-structured
    solution enumerator and the text body format.  LOP kinds also implement
    feasibility, cost and threshold.
    """

    kind: ProblemKind
    universe_role: str
    is_lop: bool = False

    def validate(self, payload: Any) -> list[str]:
        raise NotImplementedError

    def universe(self, payload: Any) -> Iterable[ElementId]:
        raise NotImplementedError

    def is_solution(self, payload: Any, subset: frozenset[ElementId]) -> bool:
        raise NotImplementedError

    def iter_solutions(self, payload: Any, budget: Budget) -> Iterator[Iterable[ElementId]]:
        raise NotImplementedError

    def project_solutions(
        self, payload: Any, image: frozenset[ElementId], budget: Budget
    ) -> set[frozenset[ElementId]] | None:
        """Optionally compute ``{S ∩ image : S ∈ S(x)}`` without listing S(x).

        Returning ``None`` makes the caller fall back to full enumeration.
        """
        return None

    # LOP interface
    def is_feasible(self, payload: Any, subset: frozenset[ElementId]) -> bool:
        raise NotAnLop(f"{self.kind.value} is not a linear optimization problem")

    def iter_feasible(self, payload: Any, budget: Budget) -> Iterator[Iterable[ElementId]]:
        raise NotAnLop(f"{self.kind.value} is not a linear optimization problem")

    def cost(self, payload: Any) -> dict[ElementId, int]:
        raise NotAnLop(f"{self.kind.value} is not a linear optimization problem")

    def threshold(self, payload: Any) -> int:
        raise NotAnLop(f"{self.kind.value} is not a linear optimization problem")

    # text format
    def parse_body(self, lines: list[tuple[int, list[str]]]) -> Any:
        raise NotImplementedError

    def serialize_body(self, payload: Any) -> list[str]:
        raise NotImplementedError


_REGISTRY: dict[ProblemKind, KindSpec] = {}


def register(spec: KindSpec) -> KindSpec:
    _REGISTRY[spec.kind] = spec
    return spec


def spec_for(kind: ProblemKind) -> KindSpec:
    if not _REGISTRY:
        import ssplift.problems  # noqa: F401  (registers every kind)
    return _REGISTRY[kind]


@dataclass(frozen=True)
class LopExtras:
    cost: dict[ElementId, int]
    threshold: int


class SolutionSpace(Protocol):
    """Anything with a universe and an enumerable solution family."""

    def universe(self) -> Universe: ...

    def is_solution(self, subset: Iterable[ElementId]) -> bool: ...

    def enumerate_solutions(self, budget: int | Budget | None = None) -> SolutionFamily: ...

    def project_solutions(
        self, image: frozenset[ElementId], budget: int | Budget | None = None
    ) -> SolutionFamily: ...


@dataclass(frozen=True)
class SspInstance:
    """An instance of one catalog problem.  Validated on construction."""

    kind: ProblemKind
    payload: Any = field(compare=True)

    def __post_init__(self) -> None:
        diagnostics = spec_for(self.kind).validate(self.payload)
        if diagnostics:
            raise ValidationError(diagnostics)

    @property
    def spec(self) -> KindSpec:
        return spec_for(self.kind)

    @cached_property
    def _universe(self) -> Universe:
        return Universe(self.spec.universe(self.payload))

    def universe(self) -> Universe:
        return self._universe

    @property
    def is_lop(self) -> bool:
        return self.spec.is_lop

    def lop(self) -> LopExtras:
        return LopExtras(self.spec.cost(self.payload), self.spec.threshold(self.payload))

    def is_solution(self, subset: Iterable[ElementId]) -> bool:
        return self.spec.is_solution(self.payload, self._universe.check(subset))

    def is_feasible(self, subset: Iterable[ElementId]) -> bool:
        spec = self.spec
        if not spec.is_lop:
            raise NotAnLop(f"{self.kind.value} is not a linear optimization problem")
        return spec.is_feasible(self.payload, self._universe.check(subset))

    def lop_is_solution(self, subset: Iterable[ElementId]) -> bool:
        """Solution membership derived from feasibility, cost and threshold."""
        s = self._universe.check(subset)
        if not self.is_feasible(s):
            return False
        d = self.spec.cost(self.payload)
        return sum(d[e] for e in s) <= self.spec.threshold(self.payload)

    def enumerate_solutions(self, budget: int | Budget | None = None) -> SolutionFamily:
        return _collect(self.spec.iter_solutions(self.payload, _as_budget(budget)))

    def enumerate_feasible(self, budget: int | Budget | None = None) -> SolutionFamily:
        if not self.spec.is_lop:
            raise NotAnLop(f"{self.kind.value} is not a linear optimization problem")
        return _collect(self.spec.iter_feasible(self.payload, _as_budget(budget)))

    def project_solutions(
        self, image: frozenset[ElementId], budget: int | Budget | None = None
    ) -> SolutionFamily:
        b = _as_budget(budget)
        image = self._universe.check(image)
        try:
            projected = self.spec.project_solutions(self.payload, image, b)
        except BudgetExceeded:
            return SolutionFamily.of([], complete=False)
        if projected is not None:
            return SolutionFamily.of(projected)
        family = self.enumerate_solutions(b)
        return SolutionFamily.of((s & image for s in family), family.complete)


def _collect(it: Iterator[Iterable[ElementId]]) -> SolutionFamily:
    found: set[tuple[ElementId, ...]] = set()
    try:
        for s in it:
            found.add(canonical_subset(s))
    except BudgetExceeded:
        return SolutionFamily(tuple(sorted(found)), complete=False)
    return SolutionFamily(tuple(sorted(found)), complete=True)


# Function-style entry points mirroring the operation names.


def is_solution(x: SspInstance, subset: Iterable[ElementId]) -> bool:
    return x.is_solution(subset)


def is_feasible(x: SspInstance, subset: Iterable[ElementId]) -> bool:
    return x.is_feasible(subset)


def enumerate_solutions(x: SolutionSpace, budget: int | Budget | None = None) -> SolutionFamily:
    return x.enumerate_solutions(budget)


def enumerate_feasible(x: SspInstance, budget: int | Budget | None = None) -> SolutionFamily:
    return x.enumerate_feasible(budget)


def is_yes_instance(x: SolutionSpace, budget: int | Budget | None = None) -> bool:
    family = x.enumerate_solutions(budget)
    if not family.complete and family.is_empty():
        raise BudgetExceeded("cannot decide Yes-status within budget")
    return not family.is_empty()
