import random

import pytest

from ssplift.core import FamilyMismatch, KindMismatch, NotAnLop, PrefixMismatch, ProblemKind as K, ValidationError
from ssplift.games import solve_interdiction, solve_min_max_regret, solve_two_stage
from ssplift.generators import fixtures, random_comb_interdiction, random_tight_vertex_cover
from ssplift.lifting import (
    adapt_interdiction_cost,
    adapt_regret_cost,
    adapt_two_stage_cost,
    gadget_interdiction,
    gadget_regret,
    gadget_two_stage,
    lift,
    negate_dnf,
)
from ssplift.problems import lit, vertex
from ssplift.qbf import QuantifiedFormula, eval_qbf, random_ea_dnf, random_eae_cnf
from ssplift.reductions import get_reduction
from ssplift.variants import (
    CombInterdictionInstance,
    CombTwoStageInstance,
    RestrictedRegretInstance,
)

from conftest import graph, sat

TRUE_EA = QuantifiedFormula.of([("e", [1]), ("a", [2])], "dnf", [(1, 2), (1, -2)])
FALSE_EA = QuantifiedFormula.of([("e", [1]), ("a", [2])], "dnf", [(1, 2)])
TRUE_EAE = QuantifiedFormula.of([("e", [1]), ("a", [2]), ("e", [3])], "cnf", [(1, 2, 3)])
FALSE_EAE = QuantifiedFormula.of([("e", [1]), ("a", [2]), ("e", [3])], "cnf", [(2,), (-2,)])


def test_negation_is_literalwise():
    assert negate_dnf(((1, -2), (), (3,))) == [(-1, 2), (), (-3,)]


class TestGadgets:
    def test_interdiction_shape(self):
        v = gadget_interdiction(TRUE_EA)
        # y is 1, x^t is 2, x^f is 3, s is 4, the helper is 5; ¬x becomes x^f
        assert v.base.payload.num_vars == 5
        assert v.blockable == {lit(2), lit(3)} and v.threshold == 1
        assert v.base.payload.clauses == ((3, -1, 4), (3, 1, 4), (2, -5), (3, -5), (-4, 5))

    def test_interdiction_decisions(self):
        assert solve_interdiction(gadget_interdiction(TRUE_EA)).decision
        assert not solve_interdiction(gadget_interdiction(FALSE_EA)).decision

    def test_regret_shape_and_values(self):
        v = gadget_regret(TRUE_EA)
        assert v.threshold == 1
        assert v.bounds[lit(3)] == (0, 1) and v.bounds[lit(2)] == (0, 0) and v.bounds[lit(-1)] == (0, 1)
        assert solve_min_max_regret(v).decision
        assert solve_min_max_regret(gadget_regret(FALSE_EA)).value == 2

    def test_regret_base_is_always_satisfiable(self):
        rng = random.Random(4)
        for _ in range(20):
            v = gadget_regret(random_ea_dnf(rng))
            assert v.base.enumerate_solutions()

    def test_two_stage_shape_and_decisions(self):
        v = gadget_two_stage(TRUE_EAE)
        assert v.first_stage == {lit(1), lit(-1)} and v.blockable == {lit(2), lit(3)} and v.gamma == 1
        assert solve_two_stage(v).decision
        assert not solve_two_stage(gadget_two_stage(FALSE_EAE)).decision

    def test_prefix_mismatch(self):
        with pytest.raises(PrefixMismatch):
            gadget_interdiction(TRUE_EAE)
        with pytest.raises(PrefixMismatch):
            gadget_two_stage(TRUE_EA)

    @pytest.mark.parametrize("seed", range(2))
    def test_sweep_against_evaluator(self, seed):
        rng = random.Random(seed)
        for _ in range(15):
            phi = random_ea_dnf(rng)
            truth = eval_qbf(phi)
            assert solve_interdiction(gadget_interdiction(phi)).decision == truth
            assert solve_min_max_regret(gadget_regret(phi)).decision == truth
            psi = random_eae_cnf(rng)
            assert solve_two_stage(gadget_two_stage(psi)).decision == eval_qbf(psi)


class TestLift:
    def test_interdiction_on_vertex_cover(self, single_clause):
        v = CombInterdictionInstance(single_clause, frozenset({lit(-1)}), 1)
        lifted = lift(get_reduction("3sat_to_vertex_cover"), "interdiction")
        w, f = lifted.apply(v)
        assert w.blockable == {f(lit(-1))} and w.threshold == 1
        assert solve_interdiction(v).decision == solve_interdiction(w).decision
        assert lifted.verify(v).status == "ok"

    @pytest.mark.parametrize("seed", range(3))
    def test_regret_values_are_equal(self, seed):
        rng = random.Random(seed)
        lifted = lift(get_reduction("3sat_to_vertex_cover"), "restricted-regret")
        for x in fixtures(K.THREE_SATISFIABILITY, 12, seed):
            if not x.enumerate_solutions():
                continue
            bounds = {e: rng.choice(((0, 0), (0, 1), (1, 1))) for e in x.universe()}
            v = RestrictedRegretInstance(x, bounds, 1)
            w, _ = lifted.apply(v)
            assert solve_min_max_regret(v).value == solve_min_max_regret(w).value

    def test_two_stage_without_blockers(self, single_clause):
        v = CombTwoStageInstance(single_clause, frozenset(), frozenset(), 0)
        w, _ = lift(get_reduction("3sat_to_vertex_cover"), "two-stage").apply(v)
        assert solve_two_stage(v).decision == solve_two_stage(w).decision is True

    def test_embedding_is_the_base_embedding(self, single_clause):
        r = get_reduction("3sat_to_vertex_cover")
        v = CombInterdictionInstance(single_clause, frozenset(), 0)
        assert lift(r, "interdiction").apply(v)[1] == r.apply(single_clause)[1]
        assert lift(r, "comb-interdiction").id == "3sat_to_vertex_cover@comb-interdiction"

    def test_errors(self, single_clause):
        r = get_reduction("3sat_to_vertex_cover")
        with pytest.raises(FamilyMismatch):
            lift(r, "sideways")
        with pytest.raises(FamilyMismatch):
            lift(r, "two-stage").apply(CombInterdictionInstance(single_clause, frozenset(), 0))
        with pytest.raises(KindMismatch):
            lift(r, "interdiction").apply(CombInterdictionInstance(sat(1, [(1,)]), frozenset(), 0))


class TestAdaptations:
    def test_interdiction_costs(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 1)
        v = adapt_interdiction_cost(CombInterdictionInstance(x, frozenset({vertex(0)}), 1))
        assert v.cost == {vertex(0): 1, vertex(1): 2} and v.threshold == 1

    def test_interdiction_agrees(self):
        rng = random.Random(2)
        for x in fixtures(K.VERTEX_COVER, 20, seed=2):
            v = random_comb_interdiction(rng, x)
            assert solve_interdiction(v).decision == solve_interdiction(adapt_interdiction_cost(v)).decision

    def test_regret_scaling(self):
        x = graph(K.VERTEX_COVER, 3, [(0, 1), (1, 2)], 1)
        bounds = {vertex(0): (0, 1), vertex(1): (0, 1), vertex(2): (0, 0)}
        v = adapt_regret_cost(RestrictedRegretInstance(x, bounds, 1))
        # n = 3 and unit nominal cost: 2(n+1) = 8
        assert v.bounds[vertex(0)] == (8, 9)
        assert v.bounds[vertex(2)] == (8, 8)

    def test_regret_needs_tight_threshold(self):
        x = graph(K.VERTEX_COVER, 3, [(0, 1), (1, 2)], 2)
        with pytest.raises(ValidationError):
            adapt_regret_cost(RestrictedRegretInstance(x, {e: (0, 1) for e in x.universe()}, 1))

    def test_regret_values_agree(self):
        rng = random.Random(6)
        for _ in range(20):
            x = random_tight_vertex_cover(rng, 5)
            v = RestrictedRegretInstance(x, {e: rng.choice(((0, 0), (0, 1))) for e in x.universe()}, 1)
            assert solve_min_max_regret(v).value == solve_min_max_regret(adapt_regret_cost(v)).value

    def test_two_stage_sentinel(self):
        x = graph(K.VERTEX_COVER, 3, [(0, 1), (1, 2)], 2)
        v = adapt_two_stage_cost(CombTwoStageInstance(x, frozenset({vertex(0)}), frozenset({vertex(2)}), 1))
        assert v.costs[vertex(1)][0] == 3
        assert v.costs[vertex(0)] == (1, 3, 3)
        assert v.costs[vertex(2)] == (3, 1, 3)

    def test_two_stage_agrees(self):
        rng = random.Random(8)
        for x in fixtures(K.VERTEX_COVER, 20, seed=8):
            u = sorted(x.universe())
            first = frozenset(e for e in u if rng.random() < 0.3)
            blockable = frozenset(e for e in u if e not in first and rng.random() < 0.4)
            v = CombTwoStageInstance(x, first, blockable, rng.randint(0, 2))
            assert solve_two_stage(v).decision == solve_two_stage(adapt_two_stage_cost(v)).decision

    def test_two_stage_needs_lop(self):
        with pytest.raises(NotAnLop):
            adapt_two_stage_cost(CombTwoStageInstance(sat(1, [(1,)]), frozenset(), frozenset(), 0))

    def test_two_stage_rejects_negative_threshold(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], -1)
        with pytest.raises(ValidationError):
            adapt_two_stage_cost(CombTwoStageInstance(x, frozenset(), frozenset(), 0))
