"""The acceptance suite: eight exhaustive property checks and a runner.

Each ``criterion_N`` function takes a seed and returns a
:class:`CriterionResult`.  A criterion passes when no check fails and it
finishes inside its time envelope.  :func:`run_all` is what ``ssplift
selftest`` executes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from ssplift.core import ProblemKind as K, SspInstance, Universe, is_yes_instance
from ssplift.games import max_regret, solve_interdiction, solve_min_max_regret, solve_two_stage
from ssplift.generators import (
    DEFAULT_SEED,
    fixtures,
    random_comb_interdiction,
    random_comb_two_stage,
    random_restricted_regret,
    random_sat,
    random_tight_vertex_cover,
    random_vertex_cover,
)
from ssplift.lifting import (
    adapt_interdiction_cost,
    adapt_regret_cost,
    adapt_two_stage_cost,
    gadget_interdiction,
    gadget_regret,
    gadget_two_stage,
    lift,
)
from ssplift.qbf import eval_qbf, eval_qbf_recursive, random_ea_dnf, random_eae_cnf, random_qbf
from ssplift.reductions import all_reductions, chain, get_reduction, verify_ssp
from ssplift.variants import CombInterdictionInstance, RegretInstance, RestrictedRegretInstance, extreme_scenarios, regret

LIFT_REDUCTIONS = ("3sat_to_vertex_cover", "3sat_to_subset_sum")
VARIANT_FAMILIES = ("interdiction", "restricted-regret", "two-stage")
TRANSITIVITY_CHAINS = (
    ("sat_to_3sat", "3sat_to_vertex_cover", "vertex_cover_to_dominating_set"),
    ("3sat_to_dham_path", "dham_path_to_dham_cycle", "dham_cycle_to_uham_cycle", "uham_cycle_to_tsp"),
)


@dataclass
class CriterionResult:
    number: int
    title: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    limit_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.seconds <= self.limit_seconds

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"criterion {self.number}: {verdict} {self.title} (checked {self.checked}, {self.seconds:.1f}s)"
        if self.seconds > self.limit_seconds:
            text += f" over the {self.limit_seconds:.0f}s envelope"
        if self.failures:
            shown = "; ".join(self.failures[:5])
            more = f" and {len(self.failures) - 5} more" if len(self.failures) > 5 else ""
            text += f" failures: {shown}{more}"
        return text


def _timed(number: int, title: str, limit_seconds: float):
    """Decorator that fills in timing and the envelope."""

    def wrap(body: Callable[[CriterionResult, int], None]):
        def run(seed: int = DEFAULT_SEED) -> CriterionResult:
            result = CriterionResult(number, title, limit_seconds=limit_seconds)
            start = time.perf_counter()
            body(result, seed)
            result.seconds = time.perf_counter() - start
            return result

        run.__name__ = body.__name__
        run.__doc__ = body.__doc__
        return run

    return wrap


def _yes_bases(kind: K, count: int, seed: int) -> list[SspInstance]:
    """``count`` Yes-instances drawn from the seeded fixture stream of ``kind``."""
    out: list[SspInstance] = []
    batch = 0
    while len(out) < count:
        out += [x for x in fixtures(kind, 4 * count, seed + batch) if is_yes_instance(x)]
        batch += 1
    return out[:count]


# ---------------------------------------------------------------------------
# 1-2: reductions


@_timed(1, "SSP property of every catalog reduction on 50 fixtures", 300)
def criterion_1(result: CriterionResult, seed: int) -> None:
    for r in all_reductions():
        bad = 0
        for x in fixtures(r.source, 50, seed):
            result.checked += 1
            if not verify_ssp(r, x).passed:
                bad += 1
        if bad:
            result.fail(f"{r.id} fails on {bad}/50")


def chain_fixtures(kind: K, seed: int, count: int = 10) -> list[SspInstance]:
    """Sources for the composed chains.

    SAT sources keep to two clauses of width two or three: wider or more
    numerous clauses give dominating set targets with thousands of vertices.
    """
    if kind is not K.SATISFIABILITY:
        return fixtures(kind, count, seed)
    rng = random.Random(f"{seed}:chain:{kind.value}")
    return [random_sat(rng, max_vars=3, max_clauses=2, max_width=3, min_width=2) for _ in range(count)]


@_timed(2, "composed chains are SSP reductions", 180)
def criterion_2(result: CriterionResult, seed: int) -> None:
    for ids in TRANSITIVITY_CHAINS:
        r = chain(list(ids))
        for i, x in enumerate(chain_fixtures(r.source, seed)):
            result.checked += 1
            report = verify_ssp(r, x)
            if not report.passed:
                result.fail(f"{r.id} fixture {i}: {report.status}")


# ---------------------------------------------------------------------------
# 3: gadgets


@_timed(3, "gadgets agree with the quantified formulas", 300)
def criterion_3(result: CriterionResult, seed: int) -> None:
    rng = random.Random(f"{seed}:ea-dnf")
    for i in range(50):
        phi = random_ea_dnf(rng)
        truth = eval_qbf(phi)
        result.checked += 1
        if solve_interdiction(gadget_interdiction(phi)).decision != truth:
            result.fail(f"interdiction gadget, formula {i}")
        if solve_min_max_regret(gadget_regret(phi)).decision != truth:
            result.fail(f"regret gadget, formula {i}")
    rng = random.Random(f"{seed}:eae-cnf")
    for i in range(50):
        phi = random_eae_cnf(rng)
        result.checked += 1
        if solve_two_stage(gadget_two_stage(phi)).decision != eval_qbf(phi):
            result.fail(f"two-stage gadget, formula {i}")


# ---------------------------------------------------------------------------
# 4, 5, 7: lifts and adaptations


def random_variant(rng: random.Random, family: str, base: SspInstance):
    if family == "interdiction":
        return random_comb_interdiction(rng, base)
    if family == "restricted-regret":
        return random_restricted_regret(rng, base)
    return random_comb_two_stage(rng, base)


def solve_variant(v):
    if isinstance(v, RestrictedRegretInstance):
        return solve_min_max_regret(v)
    if isinstance(v, CombInterdictionInstance):
        return solve_interdiction(v)
    return solve_two_stage(v)


def variant_bases(kind: K, family: str, count: int, seed: int) -> list[SspInstance]:
    """Regret needs Yes-instance bases; the other families take any fixture."""
    if family == "restricted-regret":
        return _yes_bases(kind, count, seed)
    return fixtures(kind, count, seed)


@_timed(4, "lifted instances keep decisions and regret values", 300)
def criterion_4(result: CriterionResult, seed: int) -> None:
    for rid in LIFT_REDUCTIONS:
        r = get_reduction(rid)
        for family in VARIANT_FAMILIES:
            lifted = lift(r, family)
            rng = random.Random(f"{seed}:lift:{rid}:{family}")
            for i, base in enumerate(variant_bases(r.source, family, 20, seed)):
                v = random_variant(rng, family, base)
                w, _ = lifted.apply(v)
                a, b = solve_variant(v), solve_variant(w)
                result.checked += 1
                if a.decision != b.decision:
                    result.fail(f"{lifted.id} fixture {i}: decisions {a.decision} vs {b.decision}")
                elif family == "restricted-regret" and a.value != b.value:
                    result.fail(f"{lifted.id} fixture {i}: regret {a.value} vs {b.value}")


@_timed(5, "combinatorial and cost forms agree", 180)
def criterion_5(result: CriterionResult, seed: int) -> None:
    rng = random.Random(f"{seed}:adapt")
    bases = fixtures(K.VERTEX_COVER, 10, seed) + fixtures(K.SATISFIABILITY, 10, seed)
    for i, base in enumerate(bases):
        v = random_comb_interdiction(rng, base)
        result.checked += 1
        if solve_interdiction(v).decision != solve_interdiction(adapt_interdiction_cost(v)).decision:
            result.fail(f"interdiction fixture {i}")
    for i in range(20):
        v = random_restricted_regret(rng, random_tight_vertex_cover(rng))
        a, b = solve_min_max_regret(v), solve_min_max_regret(adapt_regret_cost(v))
        result.checked += 1
        if (a.decision, a.value) != (b.decision, b.value):
            result.fail(f"regret fixture {i}: {a.value} vs {b.value}")
    for i in range(20):
        v = random_comb_two_stage(rng, random_vertex_cover(rng))
        result.checked += 1
        if solve_two_stage(v).decision != solve_two_stage(adapt_two_stage_cost(v)).decision:
            result.fail(f"two-stage fixture {i}")


@_timed(7, "lifts of 3SAT to vertex cover are SSP reductions", 180)
def criterion_7(result: CriterionResult, seed: int) -> None:
    r = get_reduction("3sat_to_vertex_cover")
    for family in VARIANT_FAMILIES:
        lifted = lift(r, family)
        rng = random.Random(f"{seed}:lift-ssp:{family}")
        for i, base in enumerate(variant_bases(r.source, family, 10, seed)):
            result.checked += 1
            report = lifted.verify(random_variant(rng, family, base))
            if not report.passed:
                result.fail(f"{lifted.id} fixture {i}: {report.status}")


# ---------------------------------------------------------------------------
# 6: canonical scenario


def regret_fixtures(seed: int, count: int = 20) -> list[RegretInstance | RestrictedRegretInstance]:
    """Regret instances with at most ten elements: LOP form over vertex cover
    with integer intervals, restricted form over SAT with 0/1 intervals."""
    rng = random.Random(f"{seed}:regret")
    out: list[RegretInstance | RestrictedRegretInstance] = []
    while len(out) < count:
        base = random_vertex_cover(rng, max_vertices=6)
        bounds = {}
        for e in base.universe():
            lo = rng.randint(-3, 5)
            bounds[e] = (lo, lo + rng.randint(0, 5))
        out.append(RegretInstance(base, bounds, rng.randint(0, 4)))
        sat = random_sat(rng, max_vars=5, max_clauses=4, max_width=3)
        if is_yes_instance(sat):
            out.append(random_restricted_regret(rng, sat))
    return out


def brute_force_max_regrets(v: RegretInstance | RestrictedRegretInstance) -> dict[frozenset, int]:
    """Maximum regret of every outer set, maximizing over all extreme scenarios."""
    family = list(v.base.enumerate_feasible() if isinstance(v, RegretInstance) else v.base.enumerate_solutions())
    best: dict[frozenset, int] = {}
    for c in extreme_scenarios(v):
        for s in family:
            r = regret(c, s, family)
            if s not in best or r > best[s]:
                best[s] = r
    return best


@_timed(6, "canonical scenario attains the maximum regret", 120)
def criterion_6(result: CriterionResult, seed: int) -> None:
    for i, v in enumerate(regret_fixtures(seed)):
        if len(v.base.universe()) > 10:
            continue
        for s, expected in brute_force_max_regrets(v).items():
            result.checked += 1
            if max_regret(v, s) != expected:
                result.fail(f"fixture {i}: canonical regret differs from the extreme-point maximum")


# ---------------------------------------------------------------------------
# 8: oracle cross-checks


def small_lop_instances(seed: int, max_universe: int = 12, per_kind: int = 10) -> list[SspInstance]:
    """LOP instances with at most ``max_universe`` elements: generated ones and reduction targets."""
    out: list[SspInstance] = []
    seen: dict[K, int] = {}

    def keep(x: SspInstance) -> None:
        if x.is_lop and len(x.universe()) <= max_universe and seen.get(x.kind, 0) < per_kind:
            seen[x.kind] = seen.get(x.kind, 0) + 1
            out.append(x)

    for kind in (K.VERTEX_COVER, K.INDEPENDENT_SET):
        for x in fixtures(kind, per_kind, seed):
            keep(x)
    for r in all_reductions():
        for x in fixtures(r.source, 3 * per_kind, seed):
            if len(x.universe()) <= max_universe:
                keep(r.apply(x)[0])
    return out


@_timed(8, "independent oracles agree", 120)
def criterion_8(result: CriterionResult, seed: int) -> None:
    rng = random.Random(f"{seed}:qbf")
    shapes = ([("e", 3), ("a", 3)], [("a", 3), ("e", 3)], [("e", 2), ("a", 2), ("e", 2)], [("a", 2), ("e", 2), ("a", 2)])
    for i in range(200):
        phi = random_qbf(rng, shapes[i % len(shapes)], rng.choice(("dnf", "cnf")), max_terms=5, min_block=0)
        result.checked += 1
        if eval_qbf(phi) != eval_qbf_recursive(phi):
            result.fail(f"qbf evaluators disagree on formula {i}")
    for x in small_lop_instances(seed):
        u: Universe = x.universe()
        boxed = set()
        for bits in product((0, 1), repeat=len(u)):
            s = frozenset(e for e, bit in zip(u, bits) if bit)
            result.checked += 1
            derived = x.lop_is_solution(s)
            if derived != x.is_solution(s):
                result.fail(f"{x.kind.value}: membership predicates disagree")
                break
            if derived:
                boxed.add(s)
        if boxed != x.enumerate_solutions().sets():
            result.fail(f"{x.kind.value}: enumerated solutions differ from the predicate")


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8)


def run_all(seed: int = DEFAULT_SEED, report: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for criterion in CRITERIA:
        res = criterion(seed)
        if report is not None:
            report(res.line())
        results.append(res)
    return results


__all__ = ["CRITERIA", "CriterionResult", "run_all", *[c.__name__ for c in CRITERIA]]
