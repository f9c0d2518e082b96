import random

import pytest

from ssplift.core import CapExceeded, ProblemKind as K, UndefinedRegret
from ssplift.games import GameValue, max_regret, solve_interdiction, solve_min_max_regret, solve_two_stage
from ssplift.generators import fixtures, random_comb_interdiction, random_comb_two_stage, random_restricted_regret
from ssplift.problems import lit, vertex
from ssplift.variants import (
    CombInterdictionInstance,
    CombTwoStageInstance,
    InterdictionInstance,
    RegretInstance,
    RestrictedRegretInstance,
    TwoStageInstance,
    canonical_scenario,
    regret,
)

from conftest import TRIANGLE, graph, sat


def yes_formulas(count, seed=3):
    return [x for x in fixtures(K.THREE_SATISFIABILITY, 4 * count, seed) if x.enumerate_solutions()][:count]


class TestInterdiction:
    def test_single_blocker_cannot_stop_a_two_literal_clause(self):
        v = CombInterdictionInstance(sat(2, [(1, 2)]), frozenset({lit(1), lit(2)}), 1)
        assert solve_interdiction(v).decision is False

    def test_two_blockers_suffice(self):
        v = CombInterdictionInstance(sat(2, [(1, 2)]), frozenset({lit(1), lit(2)}), 2)
        got = solve_interdiction(v)
        assert got.decision and got.value == 2 and got.witness == {lit(1), lit(2)}

    def test_no_instance_is_blocked_by_nothing(self):
        got = solve_interdiction(CombInterdictionInstance(sat(1, [(1,), (-1,)]), frozenset(), 0))
        assert got == GameValue(True, 0, frozenset())

    def test_cost_form_prefers_cheapest(self):
        x = graph(K.VERTEX_COVER, 3, TRIANGLE, 2)
        cost = {vertex(0): 5, vertex(1): 1, vertex(2): 1}
        got = solve_interdiction(InterdictionInstance(x, cost, 2))
        assert got.value == 2 and got.witness == {vertex(1), vertex(2)} and got.decision

    def test_negative_costs_are_always_taken(self):
        # vertex 2 is in no cover, yet its negative cost lowers the blocker cost
        x = graph(K.VERTEX_COVER, 3, [(0, 1)], 1)
        got = solve_interdiction(InterdictionInstance(x, {vertex(0): 1, vertex(1): 1, vertex(2): -1}, 1))
        assert got.witness == {vertex(0), vertex(1), vertex(2)} and got.value == 1 and got.decision

    def test_cap(self):
        x = sat(6, [])
        v = CombInterdictionInstance(x, frozenset(x.universe()), 12)
        with pytest.raises(CapExceeded):
            solve_interdiction(v, cap=100)

    @pytest.mark.parametrize("seed", range(3))
    def test_monotone_in_threshold(self, seed):
        rng = random.Random(seed)
        for x in fixtures(K.THREE_SATISFIABILITY, 10, seed):
            v = random_comb_interdiction(rng, x)
            looser = CombInterdictionInstance(x, v.blockable, v.threshold + 1)
            assert solve_interdiction(v).decision <= solve_interdiction(looser).decision

    @pytest.mark.parametrize("seed", range(3))
    def test_witness_hits_every_solution(self, seed):
        rng = random.Random(seed)
        for x in fixtures(K.THREE_SATISFIABILITY, 10, seed):
            v = random_comb_interdiction(rng, x)
            got = solve_interdiction(v)
            if got.decision:
                assert got.witness <= v.blockable and len(got.witness) <= v.threshold
                assert all(got.witness & s for s in x.enumerate_solutions())


class TestRegret:
    def test_degenerate_intervals(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 1)
        x_one = graph(K.VERTEX_COVER, 1, [], 0)
        v = RestrictedRegretInstance(x_one, {vertex(0): (1, 1)}, 0)
        assert solve_min_max_regret(v).value == 0
        assert solve_min_max_regret(RestrictedRegretInstance(x, {vertex(0): (0, 0), vertex(1): (0, 0)}, 0)).value == 0

    def test_no_solutions(self):
        x = sat(1, [(1,), (-1,)])
        with pytest.raises(UndefinedRegret):
            solve_min_max_regret(RestrictedRegretInstance(x, {e: (0, 0) for e in x.universe()}, 0))

    def test_lop_form_ranges_over_feasible_sets(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 0)
        v = RegretInstance(x, {vertex(0): (0, 3), vertex(1): (1, 1)}, 1)
        got = solve_min_max_regret(v)
        assert got.value == 1 and got.witness == {vertex(1)}

    @pytest.mark.parametrize("seed", range(3))
    def test_witness_attains_value_and_monotone(self, seed):
        rng = random.Random(seed)
        for x in yes_formulas(8, seed):
            v = random_restricted_regret(rng, x)
            got = solve_min_max_regret(v)
            sols = list(x.enumerate_solutions())
            assert regret(canonical_scenario(v, got.witness), got.witness, sols) == got.value
            assert max_regret(v, got.witness) == got.value
            assert got.value == min(max_regret(v, s) for s in sols)
            looser = RestrictedRegretInstance(x, v.bounds, v.threshold + 1)
            assert got.decision <= solve_min_max_regret(looser).decision


class TestTwoStage:
    def test_no_adversary_and_empty_first_stage(self):
        got = solve_two_stage(CombTwoStageInstance(sat(1, [(1,)]), frozenset(), frozenset(), 0))
        assert got.decision and got.witness == frozenset()

    def test_adversary_blocks_everything(self):
        x = sat(2, [(1, 2)])
        blockable = frozenset(x.universe())
        assert not solve_two_stage(CombTwoStageInstance(x, frozenset(), blockable, len(blockable))).decision

    def test_solution_inside_first_stage_survives(self):
        x = sat(1, [(1,)])
        v = CombTwoStageInstance(x, frozenset({lit(1)}), frozenset({lit(-1)}), 1)
        assert solve_two_stage(v).witness == {lit(1)}

    def test_cost_form(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 3)
        costs = {vertex(0): (5, 1, 4), vertex(1): (5, 2, 2)}
        # cover {1} in the second stage costs 2 whatever gets raised
        got = solve_two_stage(TwoStageInstance(x, costs, 2, 1))
        assert got.value == 2 and got.witness == frozenset() and got.decision

    @pytest.mark.parametrize("seed", range(3))
    def test_survivors_and_monotone_in_gamma(self, seed):
        rng = random.Random(seed)
        for x in fixtures(K.THREE_SATISFIABILITY, 8, seed):
            v = random_comb_two_stage(rng, x)
            got = solve_two_stage(v)
            if v.gamma > 0:
                weaker = CombTwoStageInstance(x, v.first_stage, v.blockable, v.gamma - 1)
                assert got.decision <= solve_two_stage(weaker).decision
            if got.decision:
                completions = [s for s in x.enumerate_solutions() if s & v.first_stage == got.witness]
                assert completions
                if v.gamma >= len(v.blockable):
                    assert any(not (s & v.blockable) for s in completions)


def test_report_lines():
    got = GameValue(True, 3, frozenset({lit(1)}))
    assert got.lines() == ["decision: yes", "value: 3", "witness: {lit:1,0}"]
    assert GameValue(False, None, None).as_dict() == {"decision": "no", "value": None, "witness": None}
