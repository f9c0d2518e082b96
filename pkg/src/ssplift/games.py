"""Exhaustive optimal-play solvers for the interdiction, regret and two-stage games.

Every solver works on bitmasks over the base universe and reports the
lexicographically least optimal witness in canonical subset order.  Each one
refuses work whose nesting product (outer candidates times inner candidates)
exceeds ``cap`` by raising :class:`~ssplift.core.CapExceeded` before it starts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from ssplift.core import (
    Budget,
    CapExceeded,
    ElementId,
    UndefinedRegret,
    _as_budget,
    format_subset,
)
from ssplift.variants import (
    CombInterdictionInstance,
    CombTwoStageInstance,
    InterdictionInstance,
    MaskCosts,
    RegretInstance,
    RestrictedRegretInstance,
    TwoStageInstance,
    canonical_key,
    feasible_masks,
    iter_submasks,
    max_regret_masks,
    solution_masks,
    two_stage_survivors,
)

GAME_CAP = 1 << 22


@dataclass(frozen=True)
class GameValue:
    """Outcome of optimal play.

    ``value`` is the minimum blocker cost (or size), the min-max regret or the
    two-stage cost; it is ``None`` for the purely combinatorial two-stage game
    and when no admissible strategy exists at all.
    """

    decision: bool
    value: int | None
    witness: frozenset[ElementId] | None

    def lines(self) -> list[str]:
        return [
            f"decision: {'yes' if self.decision else 'no'}",
            f"value: {'none' if self.value is None else self.value}",
            f"witness: {'none' if self.witness is None else format_subset(self.witness)}",
        ]

    def as_dict(self) -> dict:
        return {
            "decision": "yes" if self.decision else "no",
            "value": self.value,
            "witness": None if self.witness is None else [str(e) for e in sorted(self.witness)],
        }


def _guard(work: int, cap: int, what: str) -> None:
    if work > cap:
        raise CapExceeded(f"{what} needs about {work} evaluations, above the cap of {cap}")


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# interdiction


def solve_interdiction(
    v: InterdictionInstance | CombInterdictionInstance,
    budget: int | Budget | None = None,
    cap: int = GAME_CAP,
) -> GameValue:
    """Cheapest blocker meeting every solution of the base, if one is admissible."""
    b = _as_budget(budget)
    family = solution_masks(v.base, b)
    sols = family.masks
    u = family.universe
    if isinstance(v, CombInterdictionInstance):
        blockable = u.mask(v.blockable)
        if v.threshold < 0:
            return GameValue(False, None, None)
        limit = min(v.threshold, _popcount(blockable))
        _guard(sum(comb(_popcount(blockable), k) for k in range(limit + 1)) * max(len(sols), 1), cap,
               "combinatorial interdiction")
        # submasks come by size, then in canonical order: the first hit is optimal and least
        for m in iter_submasks(blockable, limit):
            b.tick()
            if all(m & s for s in sols):
                return GameValue(True, _popcount(m), u.subset(m))
        return GameValue(False, None, None)

    costs = MaskCosts(u, v.cost)
    forced = u.mask(e for e, c in v.cost.items() if c < 0)
    union = 0
    for s in sols:
        union |= s
    # positive-cost elements outside every solution never help; zero-cost ones can tie
    zero = u.mask(e for e, c in v.cost.items() if c == 0)
    positive = u.mask(e for e, c in v.cost.items() if c > 0)
    free = zero | (positive & union)
    _guard((1 << _popcount(free)) * max(len(sols), 1), cap, "cost interdiction")
    best_cost = None
    best = None
    for extra in iter_submasks(free):
        b.tick()
        m = forced | extra
        if all(m & s for s in sols):
            c = costs(m)
            if best_cost is None or c < best_cost or (c == best_cost and canonical_key(m) < canonical_key(best)):
                best_cost, best = c, m
    if best is None:
        return GameValue(False, None, None)
    return GameValue(best_cost <= v.threshold, best_cost, u.subset(best))


def iter_submasks_exact(elements: int, size: int):
    bits = [1 << i for i in range(elements.bit_length()) if elements >> i & 1]
    for chosen in combinations(bits, size):
        yield sum(chosen)


# ---------------------------------------------------------------------------
# min-max regret


def solve_min_max_regret(
    v: RegretInstance | RestrictedRegretInstance,
    budget: int | Budget | None = None,
    cap: int = GAME_CAP,
) -> GameValue:
    """Least maximum regret over the outer family, evaluated at canonical scenarios."""
    b = _as_budget(budget)
    if isinstance(v, RegretInstance):
        family = feasible_masks(v.base, b)
        what = "feasible sets"
    else:
        family = solution_masks(v.base, b)
        what = "solutions"
    masks = family.masks
    if not masks:
        raise UndefinedRegret(f"the {v.base.kind.value} base has no {what}, so regret is undefined")
    _guard(len(masks) * len(masks), cap, "min-max regret")
    b.tick(len(masks))
    scored = max_regret_masks(family.universe, v.bounds, masks, masks)
    value = min(r for _, r in scored)
    best = min((s for s, r in scored if r == value), key=canonical_key)
    return GameValue(value <= v.threshold, value, family.subset(best))


def max_regret(v: RegretInstance | RestrictedRegretInstance, subset, budget: int | Budget | None = None) -> int:
    """Maximum regret of one set, via its canonical scenario."""
    b = _as_budget(budget)
    family = feasible_masks(v.base, b) if isinstance(v, RegretInstance) else solution_masks(v.base, b)
    if not family.masks:
        raise UndefinedRegret("regret is undefined over an empty comparison family")
    mask = family.universe.mask(subset)
    return max_regret_masks(family.universe, v.bounds, [mask], family.masks)[0][1]


# ---------------------------------------------------------------------------
# two-stage


def solve_two_stage(
    v: TwoStageInstance | CombTwoStageInstance,
    budget: int | Budget | None = None,
    cap: int = GAME_CAP,
) -> GameValue:
    """Optimal first-stage choice against the budgeted adversary."""
    b = _as_budget(budget)
    if isinstance(v, CombTwoStageInstance):
        family = solution_masks(v.base, b)
        u = family.universe
        first, blockable = u.mask(v.first_stage), u.mask(v.blockable)
        size = _popcount(blockable)
        blockers = sum(comb(size, k) for k in range(min(v.gamma, size) + 1))
        _guard(blockers * max(len(family.masks), 1), cap, "combinatorial two-stage")
        survivors = two_stage_survivors(first, blockable, v.gamma, family.masks, b)
        if not survivors:
            return GameValue(False, None, None)
        return GameValue(True, None, u.subset(survivors[0]))
    return _solve_two_stage_cost(v, b, cap)


def _solve_two_stage_cost(v: TwoStageInstance, b: Budget, cap: int) -> GameValue:
    family = feasible_masks(v.base, b)
    u = family.universe
    first = MaskCosts(u, {e: c[0] for e, c in v.costs.items()})
    low = MaskCosts(u, {e: c[1] for e, c in v.costs.items()})
    raise_by = {e: c[2] - c[1] for e, c in v.costs.items()}
    rise = MaskCosts(u, raise_by)
    raisable = u.mask(e for e, r in raise_by.items() if r > 0)

    # every first-stage set that some feasible set extends, with its completions
    completions: dict[int, list[int]] = {}
    for f in family.masks:
        for s1 in iter_submasks(f):
            completions.setdefault(s1, []).append(f & ~s1)
    work = 0
    for s1, rest in completions.items():
        union = 0
        for s2 in rest:
            union |= s2
        r = _popcount(union & raisable)
        work += len(rest) * comb(r, min(v.gamma, r))
    _guard(work, cap, "two-stage")

    best_value = None
    best = None
    for s1 in sorted(completions, key=canonical_key):
        rest = completions[s1]
        union = 0
        for s2 in rest:
            union |= s2
        target = union & raisable
        # raising a coordinate never lowers the inner minimum, so the adversary
        # uses its whole budget on elements some completion can touch
        k = min(v.gamma, _popcount(target))
        base_costs = [(s2, low(s2)) for s2 in rest]
        worst = None
        for raised in iter_submasks_exact(target, k):
            b.tick(len(rest))
            inner = min(c + rise(s2 & raised) for s2, c in base_costs)
            if worst is None or inner > worst:
                worst = inner
        total = first(s1) + worst
        if best_value is None or total < best_value:
            best_value, best = total, s1
    if best is None:
        return GameValue(False, None, None)
    return GameValue(best_value <= v.threshold, best_value, u.subset(best))


__all__ = [
    "GAME_CAP",
    "GameValue",
    "max_regret",
    "solve_interdiction",
    "solve_min_max_regret",
    "solve_two_stage",
]
