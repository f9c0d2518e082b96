"""Hardness machinery for the min-max variants.

* Gadgets turn a quantified formula into a combinatorial variant of SAT
  whose answer equals the formula's truth value.
* :func:`lift` turns an SSP reduction between two base problems into a
  reduction between their combinatorial variants.  The embedding is reused
  unchanged.
* The ``adapt_*`` functions turn a combinatorial variant over an LOP base
  into the cost form with the same answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from ssplift.core import (
    Budget,
    FamilyMismatch,
    KindMismatch,
    NotAnLop,
    ProblemKind,
    SspInstance,
    UndefinedRegret,
    ValidationError,
    is_yes_instance,
)
from ssplift.problems import CnfFormula, lit
from ssplift.qbf import QuantifiedFormula
from ssplift.reductions.engine import SspReduction, VerificationReport, verify_equation
from ssplift.variants import (
    CombInterdictionInstance,
    CombTwoStageInstance,
    InterdictionInstance,
    RegretInstance,
    RestrictedRegretInstance,
    TwoStageInstance,
    feasible_masks,
    solution_masks,
    wrap_as_ssp,
)


# ---------------------------------------------------------------------------
# gadgets


def negate_dnf(terms: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    """De Morgan, literal by literal, keeping term order. An empty term becomes an empty clause."""
    return [tuple(-l for l in term) for term in terms]


def _renamed(clause: tuple[int, ...], rename: dict[int, int]) -> tuple[int, ...]:
    return tuple(rename[l] for l in clause)


def _double_copy_clauses(
    true_copy: list[int], false_copy: list[int], s: int, helpers: list[int]
) -> list[tuple[int, ...]]:
    """With ``s`` true some helper is true, and a true helper needs both copies of its variable."""
    clauses: list[tuple[int, ...]] = []
    for t_var, f_var, h in zip(true_copy, false_copy, helpers):
        clauses.append((t_var, -h))
        clauses.append((f_var, -h))
    clauses.append((-s, *helpers))
    return clauses


def _sat(num_vars: int, clauses: list[tuple[int, ...]]) -> SspInstance:
    return SspInstance(ProblemKind.SATISFIABILITY, CnfFormula.of(num_vars, clauses))


def gadget_interdiction(phi: QuantifiedFormula) -> CombInterdictionInstance:
    """Combinatorial interdiction over SAT that is a Yes-instance iff ∃X∀Y φ holds.

    Variables are renumbered as Y first (in block order), then the true
    copies of X, the false copies of X, the switch ``s`` and one helper
    per X variable.  Blocking the positive literal of a true copy forces it
    false, which stands for setting that X variable to false.
    """
    phi.require("ea", "dnf")
    xs, ys = phi.block(0), phi.block(1)
    n = len(xs)
    rename: dict[int, int] = {}
    for i, y in enumerate(ys, start=1):
        rename[y], rename[-y] = i, -i
    base = len(ys)
    true_copy = [base + i for i in range(1, n + 1)]
    false_copy = [base + n + i for i in range(1, n + 1)]
    for x, t_var, f_var in zip(xs, true_copy, false_copy):
        rename[x], rename[-x] = t_var, f_var
    s = base + 2 * n + 1
    helpers = [s + i for i in range(1, n + 1)]
    clauses = [(*_renamed(c, rename), s) for c in negate_dnf(phi.terms)]
    clauses += _double_copy_clauses(true_copy, false_copy, s, helpers)
    x = _sat(s + n, clauses)
    blockable = frozenset(lit(v) for v in true_copy + false_copy)
    return CombInterdictionInstance(x, blockable, n)


def gadget_regret(phi: QuantifiedFormula) -> RestrictedRegretInstance:
    """Restricted regret over SAT with min-max regret ≤ |X| iff ∃X∀Y φ holds.

    The base is ¬φ in CNF with a fresh variable ``z`` added to every clause,
    so it is always satisfiable.  Original variable numbers are kept.
    """
    phi.require("ea", "dnf")
    xs = phi.block(0)
    z = phi.num_vars + 1
    clauses = [(*c, z) for c in negate_dnf(phi.terms)]
    x = _sat(z, clauses)
    uncertain = {lit(v) for v in xs} | {lit(-v) for v in xs} | {lit(z), lit(-z)}
    bounds = {e: ((0, 1) if e in uncertain else (0, 0)) for e in x.universe()}
    return RestrictedRegretInstance(x, bounds, len(xs))


def gadget_two_stage(phi: QuantifiedFormula) -> CombTwoStageInstance:
    """Combinatorial two-stage SAT that is a Yes-instance iff ∃X∀Y∃Z φ holds.

    Variables are renumbered as X, true copies of Y, false copies of Y, Z, the
    switch ``s`` and one helper per Y variable.  The helper clauses pair
    each helper with the two copies of its Y variable.
    """
    phi.require("eae", "cnf")
    xs, ys, zs = phi.block(0), phi.block(1), phi.block(2)
    n = len(ys)
    rename: dict[int, int] = {}
    for i, x in enumerate(xs, start=1):
        rename[x], rename[-x] = i, -i
    base = len(xs)
    true_copy = [base + i for i in range(1, n + 1)]
    false_copy = [base + n + i for i in range(1, n + 1)]
    for y, t_var, f_var in zip(ys, true_copy, false_copy):
        rename[y], rename[-y] = t_var, f_var
    base += 2 * n
    for i, z in enumerate(zs, start=1):
        rename[z], rename[-z] = base + i, -(base + i)
    s = base + len(zs) + 1
    helpers = [s + i for i in range(1, n + 1)]
    clauses = [(*_renamed(c, rename), s) for c in phi.terms]
    clauses += _double_copy_clauses(true_copy, false_copy, s, helpers)
    x = _sat(s + n, clauses)
    first = frozenset(lit(v) for v in range(1, len(xs) + 1)) | frozenset(lit(-v) for v in range(1, len(xs) + 1))
    blockable = frozenset(lit(v) for v in true_copy + false_copy)
    return CombTwoStageInstance(x, first, blockable, n)


# ---------------------------------------------------------------------------
# lifting reductions to variants


FAMILIES = {
    "interdiction": CombInterdictionInstance,
    "comb-interdiction": CombInterdictionInstance,
    "regret": RestrictedRegretInstance,
    "restricted-regret": RestrictedRegretInstance,
    "two-stage": CombTwoStageInstance,
    "comb-two-stage": CombTwoStageInstance,
}


@dataclass(frozen=True)
class LiftedReduction:
    """An SSP reduction carried over to one variant family.

    The lifted embedding is the base embedding: variant universes coincide
    with base universes.
    """

    reduction: SspReduction
    family: str

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise FamilyMismatch(f"unknown variant family {self.family!r}")
        object.__setattr__(self, "family", FAMILIES[self.family].family)

    @property
    def id(self) -> str:
        return f"{self.reduction.id}@{self.family}"

    def apply(self, v):
        if not isinstance(v, FAMILIES[self.family]):
            raise FamilyMismatch(f"{self.id} expects a {self.family} instance, got {type(v).__name__}")
        if v.base.kind is not self.reduction.source:
            raise KindMismatch(
                f"{self.reduction.id} expects a {self.reduction.source.value} base, got {v.base.kind.value}"
            )
        y, f = self.reduction.apply(v.base)
        if isinstance(v, CombInterdictionInstance):
            return CombInterdictionInstance(y, f.image(v.blockable), v.threshold), f
        if isinstance(v, RestrictedRegretInstance):
            if not is_yes_instance(v.base):
                raise UndefinedRegret("restricted regret needs a Yes-instance base; this one has no solutions")
            copied = {f(e): bound for e, bound in v.bounds.items()}
            bounds = {e: copied.get(e, (0, 0)) for e in y.universe()}
            return RestrictedRegretInstance(y, bounds, v.threshold), f
        return CombTwoStageInstance(y, f.image(v.first_stage), f.image(v.blockable), v.gamma), f

    def verify(self, v, budget: int | Budget | None = None) -> VerificationReport:
        """Check the solution-preserving equation between the wrapped variants."""
        w, f = self.apply(v)
        return verify_equation(wrap_as_ssp(v), wrap_as_ssp(w), f, budget)


def lift(r: SspReduction, family: str) -> LiftedReduction:
    return LiftedReduction(r, family)


# ---------------------------------------------------------------------------
# combinatorial to cost adaptations


def adapt_interdiction_cost(v: CombInterdictionInstance) -> InterdictionInstance:
    """Unit cost on blockable elements and an unaffordable cost everywhere else.

    The off-B cost is ``t+1`` as usual, raised to 1 when ``t`` is negative so
    that it stays unaffordable.
    """
    outside = max(v.threshold + 1, 1)
    cost = {e: (1 if e in v.blockable else outside) for e in v.base.universe()}
    return InterdictionInstance(v.base, cost, v.threshold)


def _require_lop(base: SspInstance) -> None:
    if not base.is_lop:
        raise NotAnLop(f"{base.kind.value} is not a linear optimization problem")


def adapt_regret_cost(v: RestrictedRegretInstance, budget: int | Budget | None = None) -> RegretInstance:
    """Scale the nominal cost by 2(n+1) and add the 0/1 bounds, with n = |U|.

    The scaled costs force every regret-optimal feasible set to be
    cost-optimal, so the two regret values only coincide when the solutions
    are exactly the cost-optimal feasible sets.  That is checked here: the
    base must be a Yes-instance whose threshold equals the optimum cost.
    """
    _require_lop(v.base)
    sols = solution_masks(v.base, budget)
    if not sols.masks:
        raise UndefinedRegret("restricted regret needs a Yes-instance base; this one has no solutions")
    extras = v.base.lop()
    feasible = feasible_masks(v.base, budget)
    d = extras.cost
    optimum = min(sum(d[e] for e in feasible.subset(m)) for m in feasible.masks)
    if extras.threshold != optimum:
        raise ValidationError(
            [f"cost adaptation needs the threshold to equal the optimum cost {optimum}, got {extras.threshold}"]
        )
    scale = 2 * (len(v.base.universe()) + 1)
    bounds = {e: (scale * d[e] + lo, scale * d[e] + hi) for e, (lo, hi) in v.bounds.items()}
    return RegretInstance(v.base, bounds, v.threshold)


def adapt_two_stage_cost(v: CombTwoStageInstance) -> TwoStageInstance:
    """Sentinel cost t+1 makes off-U1 first-stage picks, U1 second-stage picks
    and raised blockable elements unaffordable.

    Needs nonnegative nominal costs and threshold, otherwise a sentinel
    element could be offset by a negative one.
    """
    _require_lop(v.base)
    extras = v.base.lop()
    t = extras.threshold
    negative = sorted(e for e, c in extras.cost.items() if c < 0)
    if negative or t < 0:
        where = f"cost of {negative[0]}" if negative else f"threshold {t}"
        raise ValidationError([f"two-stage cost adaptation needs nonnegative costs and threshold ({where} is negative)"])
    d = extras.cost
    sentinel = t + 1
    costs = {}
    for e in v.base.universe():
        first = d[e] if e in v.first_stage else sentinel
        low = sentinel if e in v.first_stage else d[e]
        high = sentinel if (e in v.first_stage or e in v.blockable) else d[e]
        costs[e] = (first, low, high)
    return TwoStageInstance(v.base, costs, t, v.gamma)


__all__ = [
    "FAMILIES",
    "LiftedReduction",
    "adapt_interdiction_cost",
    "adapt_regret_cost",
    "adapt_two_stage_cost",
    "gadget_interdiction",
    "gadget_regret",
    "gadget_two_stage",
    "lift",
    "negate_dnf",
]
