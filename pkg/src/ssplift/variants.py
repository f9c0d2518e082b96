"""Min-max variants of a nominal problem and their SSP wrappers.

Six instance types cover the interdiction, interval regret and two-stage
adjustable families, each in a cost form and a combinatorial (or restricted)
form.  The combinatorial forms are subset search problems over the base
universe; :func:`wrap_as_ssp` exposes them through the same interface as
:class:`~ssplift.core.SspInstance` so the reduction engine can verify them.

Variant instances are written as an ordinary instance file followed by a
``variant <name>`` section (see :func:`parse_variant`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Union

from ssplift.core import (
    Budget,
    BudgetExceeded,
    ElementId,
    ForeignElement,
    ParseError,
    SolutionFamily,
    SspInstance,
    UndefinedRegret,
    Universe,
    ValidationError,
    _as_budget,
    canonical_subset,
    check_int,
)
from ssplift.problems.text import parse_document, serialize_instance


# ---------------------------------------------------------------------------
# bitmask view of a base instance


@dataclass(frozen=True)
class MaskedFamily:
    """A solution family as bitmasks over the base universe order."""

    universe: Universe
    masks: tuple[int, ...]

    def subset(self, mask: int) -> frozenset[ElementId]:
        return self.universe.subset(mask)


def solution_masks(base: SspInstance, budget: int | Budget | None = None) -> MaskedFamily:
    """All of S(base) as bitmasks; raises BudgetExceeded if enumeration is cut short."""
    family = base.enumerate_solutions(budget)
    if not family.complete:
        raise BudgetExceeded(f"solutions of the {base.kind.value} base exceed the enumeration budget")
    u = base.universe()
    return MaskedFamily(u, tuple(u.mask(s) for s in family))


def feasible_masks(base: SspInstance, budget: int | Budget | None = None) -> MaskedFamily:
    family = base.enumerate_feasible(budget)
    if not family.complete:
        raise BudgetExceeded(f"feasible sets of the {base.kind.value} base exceed the enumeration budget")
    u = base.universe()
    return MaskedFamily(u, tuple(u.mask(s) for s in family))


def iter_submasks(elements: int, max_size: int | None = None) -> Iterator[int]:
    """Submasks of ``elements`` with at most ``max_size`` bits, by size then bit order."""
    bits = [1 << i for i in range(elements.bit_length()) if elements >> i & 1]
    top = len(bits) if max_size is None else min(max_size, len(bits))
    for size in range(top + 1):
        for combo in combinations(bits, size):
            yield sum(combo)


def _subset_of(universe: Universe, subset: Iterable[ElementId], what: str) -> frozenset[ElementId]:
    s = frozenset(subset)
    outside = [e for e in s if e not in universe]
    if outside:
        raise ForeignElement(f"{what} mentions {min(outside)}, which is not in the universe")
    return s


def _total(universe: Universe, mapping: Mapping[ElementId, object], what: str) -> None:
    missing = [e for e in universe if e not in mapping]
    if missing:
        raise ValidationError([f"{what} is undefined on {missing[0]}"])
    extra = [e for e in mapping if e not in universe]
    if extra:
        raise ForeignElement(f"{what} mentions {min(extra)}, which is not in the universe")


# ---------------------------------------------------------------------------
# instance types


@dataclass(frozen=True)
class InterdictionInstance:
    """Is there a blocker B with c(B) ≤ t meeting every solution of the base?"""

    base: SspInstance
    cost: Mapping[ElementId, int]
    threshold: int

    def __post_init__(self) -> None:
        _total(self.base.universe(), self.cost, "cost")
        for e, c in self.cost.items():
            check_int(c, f"cost of {e}")
        check_int(self.threshold, "threshold")

    family = "interdiction"


@dataclass(frozen=True)
class CombInterdictionInstance:
    """Is there B' ⊆ B with |B'| ≤ t meeting every solution of the base?"""

    base: SspInstance
    blockable: frozenset[ElementId]
    threshold: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "blockable", _subset_of(self.base.universe(), self.blockable, "blockable set"))
        check_int(self.threshold, "threshold")

    family = "comb-interdiction"


@dataclass(frozen=True)
class RegretInstance:
    """Interval min-max regret over the feasible sets of an LOP base."""

    base: SspInstance
    bounds: Mapping[ElementId, tuple[int, int]]
    threshold: int

    def __post_init__(self) -> None:
        if not self.base.is_lop:
            raise ValidationError([f"regret needs an LOP base, {self.base.kind.value} is not one"])
        _check_bounds(self.base.universe(), self.bounds, binary=False)
        check_int(self.threshold, "threshold")

    family = "regret"


@dataclass(frozen=True)
class RestrictedRegretInstance:
    """Min-max regret over S(base) with 0/1 interval bounds and threshold q."""

    base: SspInstance
    bounds: Mapping[ElementId, tuple[int, int]]
    threshold: int

    def __post_init__(self) -> None:
        _check_bounds(self.base.universe(), self.bounds, binary=True)
        check_int(self.threshold, "threshold")

    family = "restricted-regret"


def _check_bounds(universe: Universe, bounds: Mapping[ElementId, tuple[int, int]], binary: bool) -> None:
    _total(universe, bounds, "interval bounds")
    problems = []
    for e, (lo, hi) in bounds.items():
        check_int(lo, f"lower bound of {e}")
        check_int(hi, f"upper bound of {e}")
        if lo > hi:
            problems.append(f"lower bound exceeds upper bound at {e}")
        if binary and not {lo, hi} <= {0, 1}:
            problems.append(f"restricted bounds must be 0 or 1 at {e}")
    if problems:
        raise ValidationError(problems)


@dataclass(frozen=True)
class TwoStageInstance:
    """Two-stage adjustable problem with discrete budgeted uncertainty.

    ``costs[e] = (c1, low2, high2)``.  A ``gamma`` above the universe size is
    clamped to it (raising more elements than exist changes nothing) and the
    clamp is recorded in ``diagnostics``; a negative ``gamma`` is rejected.
    """

    base: SspInstance
    costs: Mapping[ElementId, tuple[int, int, int]]
    threshold: int
    gamma: int
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.base.is_lop:
            raise ValidationError([f"two-stage needs an LOP base, {self.base.kind.value} is not one"])
        u = self.base.universe()
        _total(u, self.costs, "cost triple")
        for e, triple in self.costs.items():
            for value in triple:
                check_int(value, f"cost of {e}")
        check_int(self.threshold, "threshold")
        if self.gamma < 0:
            raise ValidationError([f"uncertainty parameter must be non-negative, got {self.gamma}"])
        if self.gamma > len(u):
            note = f"gamma {self.gamma} clamped to the universe size {len(u)}"
            object.__setattr__(self, "diagnostics", self.diagnostics + (note,))
            object.__setattr__(self, "gamma", len(u))

    family = "two-stage"


@dataclass(frozen=True)
class CombTwoStageInstance:
    """∃S1 ⊆ U1 ∀B' ⊆ B, |B'| ≤ Γ ∃S2 ⊆ U2 \\ B' with S1 ∪ S2 ∈ S(base)."""

    base: SspInstance
    first_stage: frozenset[ElementId]
    blockable: frozenset[ElementId]
    gamma: int

    def __post_init__(self) -> None:
        u = self.base.universe()
        object.__setattr__(self, "first_stage", _subset_of(u, self.first_stage, "first-stage set"))
        object.__setattr__(self, "blockable", _subset_of(u, self.blockable, "blockable set"))
        if self.blockable & self.first_stage:
            raise ValidationError(["blockable elements must be second-stage elements"])
        if self.gamma < 0:
            raise ValidationError([f"uncertainty parameter must be non-negative, got {self.gamma}"])

    @property
    def second_stage(self) -> frozenset[ElementId]:
        return frozenset(self.base.universe()) - self.first_stage

    family = "comb-two-stage"


VariantInstance = Union[
    InterdictionInstance,
    CombInterdictionInstance,
    RegretInstance,
    RestrictedRegretInstance,
    TwoStageInstance,
    CombTwoStageInstance,
]


# ---------------------------------------------------------------------------
# canonical scenario and regret


def canonical_scenario(
    x: RegretInstance | RestrictedRegretInstance, subset: Iterable[ElementId]
) -> dict[ElementId, int]:
    """Upper bound on the chosen elements, lower bound everywhere else."""
    s = _subset_of(x.base.universe(), subset, "subset")
    return {e: (hi if e in s else lo) for e, (lo, hi) in x.bounds.items()}


def set_cost(cost: Mapping[ElementId, int], subset: Iterable[ElementId]) -> int:
    return sum(cost[e] for e in subset)


def regret(
    cost: Mapping[ElementId, int], subset: Iterable[ElementId], comparison: Iterable[Iterable[ElementId]]
) -> int:
    """c(S) minus the cheapest member of the comparison family under c."""
    best = min((set_cost(cost, t) for t in comparison), default=None)
    if best is None:
        raise UndefinedRegret("regret is undefined over an empty comparison family")
    return set_cost(cost, subset) - best


def extreme_scenarios(x: RegretInstance | RestrictedRegretInstance) -> Iterator[dict[ElementId, int]]:
    """Every cost function taking an interval end point on each element."""
    elements = list(x.base.universe())
    for mask in range(1 << len(elements)):
        yield {e: x.bounds[e][1 if mask >> i & 1 else 0] for i, e in enumerate(elements)}


class MaskCosts:
    """Linear costs evaluated on bitmasks."""

    def __init__(self, universe: Universe, cost: Mapping[ElementId, int]):
        self.values = [cost[e] for e in universe]

    def __call__(self, mask: int) -> int:
        total = 0
        values = self.values
        while mask:
            low = mask & -mask
            total += values[low.bit_length() - 1]
            mask ^= low
        return total


def max_regret_masks(
    universe: Universe,
    bounds: Mapping[ElementId, tuple[int, int]],
    outer: Iterable[int],
    comparison: tuple[int, ...],
) -> list[tuple[int, int]]:
    """(mask, max regret) for each outer candidate, via the canonical scenario."""
    low = MaskCosts(universe, {e: lo for e, (lo, _) in bounds.items()})
    diff = MaskCosts(universe, {e: hi - lo for e, (lo, hi) in bounds.items()})
    base = {t: low(t) for t in comparison}
    out = []
    for s in outer:
        own = low(s) + diff(s)
        cheapest = min(base[t] + diff(t & s) for t in comparison)
        out.append((s, own - cheapest))
    return out


# ---------------------------------------------------------------------------
# SSP wrappers


class VariantSsp:
    """A combinatorial variant viewed as a subset search problem over the base universe."""

    family: str

    def __init__(self, variant):
        self.variant = variant
        self.base: SspInstance = variant.base

    def universe(self) -> Universe:
        return self.base.universe()

    def _masks(self, budget: Budget) -> Iterator[int]:
        raise NotImplementedError

    def is_solution(self, subset: Iterable[ElementId]) -> bool:
        u = self.universe()
        mask = u.mask(u.check(subset))
        return mask in set(self._masks(_as_budget(None)))

    def enumerate_solutions(self, budget: int | Budget | None = None) -> SolutionFamily:
        b = _as_budget(budget)
        u = self.universe()
        found = []
        try:
            for mask in self._masks(b):
                found.append(u.subset(mask))
        except BudgetExceeded:
            return SolutionFamily.of(found, complete=False)
        return SolutionFamily.of(found)

    def project_solutions(
        self, image: frozenset[ElementId], budget: int | Budget | None = None
    ) -> SolutionFamily:
        family = self.enumerate_solutions(budget)
        image = frozenset(image)
        return SolutionFamily.of((s & image for s in family), family.complete)


class CombInterdictionSsp(VariantSsp):
    """Solutions are the blockers B' ⊆ B with |B'| ≤ t meeting every base solution."""

    family = "comb-interdiction"

    def _masks(self, budget: Budget) -> Iterator[int]:
        v: CombInterdictionInstance = self.variant
        sols = solution_masks(self.base, budget).masks
        u = self.universe()
        if v.threshold < 0:
            return
        for blocker in iter_submasks(u.mask(v.blockable), v.threshold):
            budget.tick()
            if all(blocker & s for s in sols):
                yield blocker


class RestrictedRegretSsp(VariantSsp):
    """Solutions are the members of S(base) whose maximum regret is at most q."""

    family = "restricted-regret"

    def _masks(self, budget: Budget) -> Iterator[int]:
        v: RestrictedRegretInstance = self.variant
        sols = solution_masks(self.base, budget).masks
        if not sols:
            return
        budget.tick(len(sols) * len(sols))
        for s, r in max_regret_masks(self.universe(), v.bounds, sols, sols):
            if r <= v.threshold:
                yield s


class CombTwoStageSsp(VariantSsp):
    """Solutions are the first-stage sets that survive every admissible blocker."""

    family = "comb-two-stage"

    def _masks(self, budget: Budget) -> Iterator[int]:
        v: CombTwoStageInstance = self.variant
        u = self.universe()
        sols = solution_masks(self.base, budget).masks
        yield from two_stage_survivors(u.mask(v.first_stage), u.mask(v.blockable), v.gamma, sols, budget)


def two_stage_survivors(first: int, blockable: int, gamma: int, sols: tuple[int, ...], budget: Budget) -> list[int]:
    """First-stage masks S1 ⊆ U1 such that every ≤Γ blocker leaves a completion.

    A completion of S1 is a base solution S with S ∩ U1 = S1; it avoids the
    blocker B' when S ∩ B' = ∅.
    """
    completions: dict[int, list[int]] = {}
    for s in sols:
        completions.setdefault(s & first, []).append(s & blockable)
    survivors = []
    for s1 in sorted(completions, key=lambda m: canonical_key(m)):
        parts = completions[s1]
        ok = True
        for blocker in iter_submasks(blockable, gamma):
            budget.tick(len(parts))
            if not any(not (p & blocker) for p in parts):
                ok = False
                break
        if ok:
            survivors.append(s1)
    return survivors


def canonical_key(mask: int) -> tuple[int, ...]:
    """Sort key matching canonical subset order (sorted element indices)."""
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


_WRAPPERS = {
    CombInterdictionInstance: CombInterdictionSsp,
    RestrictedRegretInstance: RestrictedRegretSsp,
    CombTwoStageInstance: CombTwoStageSsp,
}


def wrap_as_ssp(v: CombInterdictionInstance | RestrictedRegretInstance | CombTwoStageInstance) -> VariantSsp:
    """The variant as a subset search problem with the base universe."""
    try:
        return _WRAPPERS[type(v)](v)
    except KeyError:
        raise TypeError(f"{type(v).__name__} has no subset-search form") from None


# ---------------------------------------------------------------------------
# text format of variant sections


def _eid(token: str, lineno: int, column: int) -> ElementId:
    try:
        return ElementId.parse(token)
    except ParseError as exc:
        raise ParseError(str(exc), lineno, column) from None


def _int(token: str, lineno: int, column: int) -> int:
    try:
        return check_int(int(token))
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno, column) from None


class _Section:
    def __init__(self, name: str, lines, allowed: dict[str, int | None]):
        self.name = name
        self.rows: dict[str, list[tuple[int, tuple[str, ...]]]] = {}
        for lineno, tokens in lines:
            key, args = tokens[0], tokens[1:]
            if key not in allowed:
                raise ParseError(f"unexpected keyword {key!r} in {name} section", lineno, 1)
            arity = allowed[key]
            if arity is not None and len(args) != arity:
                raise ParseError(f"{key!r} expects {arity} arguments", lineno, 1)
            self.rows.setdefault(key, []).append((lineno, args))

    def scalar(self, key: str) -> int:
        rows = self.rows.get(key, [])
        if len(rows) != 1:
            raise ParseError(f"{self.name} section needs exactly one {key!r} line")
        lineno, args = rows[0]
        return _int(args[0], lineno, 2)

    def elements(self, key: str) -> frozenset[ElementId]:
        return frozenset(
            _eid(tok, n, col) for n, args in self.rows.get(key, []) for col, tok in enumerate(args, start=2)
        )

    def table(self, key: str, width: int) -> dict[ElementId, tuple[int, ...]]:
        out: dict[ElementId, tuple[int, ...]] = {}
        for n, args in self.rows.get(key, []):
            e = _eid(args[0], n, 2)
            if e in out:
                raise ParseError(f"{key!r} given twice for {e}", n, 1)
            out[e] = tuple(_int(a, n, col) for col, a in enumerate(args[1:1 + width], start=3))
        return out


def parse_variant(text: str) -> VariantInstance:
    """Read an instance file that carries a variant section."""
    doc = parse_document(text)
    if doc.variant is None:
        raise ParseError("file has no variant section")
    base, lines = doc.instance, doc.variant_lines
    name = doc.variant
    if name == "interdiction":
        sec = _Section(name, lines, {"cost": 2, "t": 1})
        cost = {e: c for e, (c,) in sec.table("cost", 1).items()}
        return InterdictionInstance(base, cost, sec.scalar("t"))
    if name == "comb-interdiction":
        sec = _Section(name, lines, {"blockable": None, "t": 1})
        return CombInterdictionInstance(base, sec.elements("blockable"), sec.scalar("t"))
    if name in ("regret", "restricted-regret"):
        key = "t" if name == "regret" else "q"
        sec = _Section(name, lines, {"bounds": 3, key: 1})
        given = sec.table("bounds", 2)
        if name == "regret":
            return RegretInstance(base, dict(given), sec.scalar(key))
        bounds = {e: given.get(e, (0, 0)) for e in base.universe()}
        extra = set(given) - set(bounds)
        if extra:
            raise ForeignElement(f"interval bounds mention {min(extra)}, which is not in the universe")
        return RestrictedRegretInstance(base, bounds, sec.scalar(key))
    if name == "two-stage":
        sec = _Section(name, lines, {"cost": 4, "t": 1, "gamma": 1})
        return TwoStageInstance(base, dict(sec.table("cost", 3)), sec.scalar("t"), sec.scalar("gamma"))
    sec = _Section(name, lines, {"first-stage": None, "blockable": None, "gamma": 1})
    return CombTwoStageInstance(base, sec.elements("first-stage"), sec.elements("blockable"), sec.scalar("gamma"))


def _element_line(key: str, elements: Iterable[ElementId]) -> str:
    return " ".join([key, *(str(e) for e in canonical_subset(elements))])


def serialize_variant(v: VariantInstance) -> str:
    lines = [f"variant {v.family}"]
    order = list(v.base.universe())
    if isinstance(v, InterdictionInstance):
        lines += [f"cost {e} {v.cost[e]}" for e in order]
        lines.append(f"t {v.threshold}")
    elif isinstance(v, CombInterdictionInstance):
        lines += [_element_line("blockable", v.blockable), f"t {v.threshold}"]
    elif isinstance(v, RegretInstance):
        lines += [f"bounds {e} {v.bounds[e][0]} {v.bounds[e][1]}" for e in order]
        lines.append(f"t {v.threshold}")
    elif isinstance(v, RestrictedRegretInstance):
        lines += [f"bounds {e} {v.bounds[e][0]} {v.bounds[e][1]}" for e in order if v.bounds[e] != (0, 0)]
        lines.append(f"q {v.threshold}")
    elif isinstance(v, TwoStageInstance):
        lines += [f"cost {e} {' '.join(str(c) for c in v.costs[e])}" for e in order]
        lines += [f"t {v.threshold}", f"gamma {v.gamma}"]
    else:
        lines += [
            _element_line("first-stage", v.first_stage),
            _element_line("blockable", v.blockable),
            f"gamma {v.gamma}",
        ]
    return serialize_instance(v.base) + "\n".join(lines) + "\n"


__all__ = [
    "CombInterdictionInstance",
    "CombTwoStageInstance",
    "InterdictionInstance",
    "MaskedFamily",
    "RegretInstance",
    "RestrictedRegretInstance",
    "TwoStageInstance",
    "VariantInstance",
    "VariantSsp",
    "canonical_scenario",
    "extreme_scenarios",
    "parse_variant",
    "regret",
    "serialize_variant",
    "solution_masks",
    "wrap_as_ssp",
]
