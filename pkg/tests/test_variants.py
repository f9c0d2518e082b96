import random

import pytest
from hypothesis import given, settings, strategies as st

from ssplift.core import ForeignElement, ParseError, ProblemKind as K, SspInstance, ValidationError
from ssplift.generators import fixtures, random_tight_vertex_cover
from ssplift.problems import GraphProblem, lit, vertex
from ssplift.variants import (
    CombInterdictionInstance,
    CombTwoStageInstance,
    InterdictionInstance,
    RegretInstance,
    RestrictedRegretInstance,
    TwoStageInstance,
    canonical_scenario,
    extreme_scenarios,
    parse_variant,
    regret,
    serialize_variant,
    set_cost,
    wrap_as_ssp,
)

from conftest import TRIANGLE, graph, sat


def zero_bounds(x):
    return {e: (0, 0) for e in x.universe()}


class TestConstruction:
    def test_blockable_must_be_in_universe(self):
        with pytest.raises(ForeignElement):
            CombInterdictionInstance(sat(1, [(1,)]), frozenset({lit(2)}), 1)

    def test_regret_needs_lop_base(self):
        x = sat(1, [(1,)])
        with pytest.raises(ValidationError):
            RegretInstance(x, zero_bounds(x), 0)

    def test_restricted_bounds_are_binary(self):
        x = sat(1, [(1,)])
        with pytest.raises(ValidationError):
            RestrictedRegretInstance(x, {lit(1): (0, 2), lit(-1): (0, 0)}, 0)

    def test_bounds_must_be_ordered(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 1)
        with pytest.raises(ValidationError):
            RegretInstance(x, {vertex(0): (3, 1), vertex(1): (0, 0)}, 0)

    def test_gamma_clamped_with_diagnostic(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 1)
        v = TwoStageInstance(x, {e: (1, 1, 2) for e in x.universe()}, 1, 7)
        assert v.gamma == 2
        assert any("clamped" in d for d in v.diagnostics)

    def test_negative_gamma_rejected(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 1)
        with pytest.raises(ValidationError):
            TwoStageInstance(x, {e: (1, 1, 2) for e in x.universe()}, 1, -1)
        with pytest.raises(ValidationError):
            CombTwoStageInstance(x, frozenset(), frozenset(), -1)

    def test_blockable_is_second_stage(self):
        x = sat(1, [(1,)])
        with pytest.raises(ValidationError):
            CombTwoStageInstance(x, frozenset({lit(1)}), frozenset({lit(1)}), 1)


class TestWrappedSolutions:
    def test_unit_clause_blocker(self):
        v = CombInterdictionInstance(sat(1, [(1,)]), frozenset({lit(1)}), 1)
        assert wrap_as_ssp(v).enumerate_solutions().sets() == {frozenset({lit(1)})}

    def test_negative_threshold_has_no_blockers(self):
        v = CombInterdictionInstance(sat(1, [(1,)]), frozenset({lit(1)}), -1)
        assert wrap_as_ssp(v).enumerate_solutions().is_empty()

    def test_no_instance_is_blocked_by_nothing(self):
        v = CombInterdictionInstance(sat(1, [(1,), (-1,)]), frozenset(), 0)
        assert wrap_as_ssp(v).enumerate_solutions().sets() == {frozenset()}

    def test_regret_wrapper_keeps_low_regret_solutions(self):
        x = graph(K.VERTEX_COVER, 3, TRIANGLE, 2)
        bounds = {vertex(0): (0, 1), vertex(1): (0, 0), vertex(2): (0, 0)}
        v = RestrictedRegretInstance(x, bounds, 0)
        assert wrap_as_ssp(v).enumerate_solutions().sets() == {frozenset({vertex(1), vertex(2)})}

    def test_two_stage_without_blockers_keeps_every_first_stage_trace(self):
        x = sat(2, [(1, 2)])
        v = CombTwoStageInstance(x, frozenset({lit(1), lit(-1)}), frozenset(), 0)
        assert wrap_as_ssp(v).enumerate_solutions().sets() == {frozenset({lit(1)}), frozenset({lit(-1)})}

    def test_cost_forms_have_no_wrapper(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 1)
        with pytest.raises(TypeError):
            wrap_as_ssp(InterdictionInstance(x, {e: 1 for e in x.universe()}, 1))


class TestScenarios:
    def test_canonical_scenario_extremes(self):
        x = graph(K.VERTEX_COVER, 2, [(0, 1)], 1)
        v = RegretInstance(x, {vertex(0): (1, 4), vertex(1): (2, 5)}, 0)
        assert canonical_scenario(v, set()) == {vertex(0): 1, vertex(1): 2}
        assert canonical_scenario(v, x.universe()) == {vertex(0): 4, vertex(1): 5}

    def test_regret_needs_comparison(self):
        from ssplift.core import UndefinedRegret

        with pytest.raises(UndefinedRegret):
            regret({}, [], [])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_canonical_scenario_attains_max_regret(self, seed):
        rng = random.Random(seed)
        x = random_tight_vertex_cover(rng, 4)
        bounds = {}
        for e in x.universe():
            lo = rng.randint(0, 3)
            bounds[e] = (lo, lo + rng.randint(0, 3))
        v = RegretInstance(x, bounds, 0)
        feasible = list(x.enumerate_feasible())
        for s in feasible:
            worst = max(regret(c, s, feasible) for c in extreme_scenarios(v))
            assert regret(canonical_scenario(v, s), s, feasible) == worst
            assert worst >= 0


def variant_samples():
    rng = random.Random(5)
    cover = fixtures(K.VERTEX_COVER, 6, seed=5)
    formulas = fixtures(K.THREE_SATISFIABILITY, 6, seed=5)
    out = []
    for x in cover:
        u = list(x.universe())
        out.append(InterdictionInstance(x, {e: rng.randint(-1, 3) for e in u}, rng.randint(0, 3)))
        out.append(RegretInstance(x, {e: (1, 1 + rng.randint(0, 2)) for e in u}, 2))
        out.append(TwoStageInstance(x, {e: (1, 0, rng.randint(0, 2)) for e in u}, 3, 1))
    for x in formulas:
        u = sorted(x.universe())
        out.append(CombInterdictionInstance(x, frozenset(u[::2]), 1))
        out.append(RestrictedRegretInstance(x, {e: (0, i % 2) for i, e in enumerate(u)}, 1))
        out.append(CombTwoStageInstance(x, frozenset(u[:2]), frozenset(u[2::2]), 1))
    return out


class TestText:
    @pytest.mark.parametrize("v", variant_samples(), ids=lambda v: v.family)
    def test_round_trip(self, v):
        text = serialize_variant(v)
        again = parse_variant(text)
        assert again == v
        assert serialize_variant(again) == text

    def test_restricted_bounds_default_to_zero(self):
        v = parse_variant("ssp sat v1\np cnf 1 1\n1 0\nvariant restricted-regret\nbounds lit:1,0 0 1\nq 0\n")
        assert v.bounds == {lit(1): (0, 1), lit(-1): (0, 0)}

    def test_missing_section(self):
        with pytest.raises(ParseError):
            parse_variant("ssp sat v1\np cnf 1 1\n1 0\n")

    def test_unknown_key(self):
        with pytest.raises(ParseError):
            parse_variant("ssp sat v1\np cnf 1 1\n1 0\nvariant comb-interdiction\nblockable lit:1,0\nt 1\nbogus 3\n")

    def test_missing_threshold(self):
        with pytest.raises(ParseError):
            parse_variant("ssp sat v1\np cnf 1 1\n1 0\nvariant comb-interdiction\nblockable lit:1,0\n")


def test_set_cost():
    assert set_cost({vertex(0): 2, vertex(1): 5}, [vertex(1)]) == 5


def test_graph_payload_equality_survives_wrapping():
    x = SspInstance(K.VERTEX_COVER, GraphProblem.of(2, [(0, 1)], 1))
    v = CombInterdictionInstance(x, frozenset({vertex(0)}), 1)
    assert wrap_as_ssp(v).universe() == x.universe()
