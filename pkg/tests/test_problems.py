from itertools import chain as iter_chain, combinations

import pytest

from ssplift.core import (
    ForeignElement,
    NotAnLop,
    ParseError,
    ProblemKind as K,
    SspInstance,
    ValidationError,
)
from ssplift.generators import fixtures
from ssplift.problems import (
    DigraphProblem,
    GraphProblem,
    KnapsackProblem,
    PartitionProblem,
    SetSystem,
    TspProblem,
    edge,
    item,
    lit,
    parse_instance,
    serialize_instance,
    vertex,
)
from ssplift.reductions import all_reductions

from conftest import TRIANGLE, graph, sat, three_sat


def complete_graph_weights(n, w=1):
    return tuple((u, v, w) for u, v in combinations(range(n), 2))


def all_subsets(universe):
    items = list(universe)
    return (frozenset(c) for c in iter_chain.from_iterable(combinations(items, r) for r in range(len(items) + 1)))


class TestSolutionPredicates:
    def test_sat_assignment(self):
        x = sat(2, [(1, 2)])
        assert x.is_solution({lit(1), lit(-2)})
        assert not x.is_solution({lit(1), lit(-1)})

    def test_vertex_cover_triangle(self):
        x = graph(K.VERTEX_COVER, 3, TRIANGLE, 2)
        assert x.is_solution({vertex(0), vertex(1)})
        assert not x.is_solution({vertex(0)})

    def test_foreign_element(self):
        with pytest.raises(ForeignElement):
            sat(1, []).is_solution({lit(2)})

    def test_hitting_set(self):
        x = SspInstance(K.HITTING_SET, SetSystem.of(3, [(0, 1), (1, 2)], 1))
        assert x.is_solution({item("el", 1)})

    def test_feedback_vertex_set_breaks_two_cycle(self):
        x = SspInstance(K.FEEDBACK_VERTEX_SET, DigraphProblem.of(2, [(0, 1), (1, 0)], 1))
        assert x.is_solution({vertex(0)})

    def test_partition_breaks_symmetry(self):
        x = SspInstance(K.PARTITION, PartitionProblem((1, 2, 3)))
        assert x.enumerate_solutions().sets() == {frozenset({item("num", 2)})}


class TestFeasibility:
    def test_tsp_tour_over_threshold_is_feasible_only(self):
        x = SspInstance(K.TRAVELING_SALESMAN, TspProblem(4, complete_graph_weights(4, 2), 3))
        tour = {edge(0, 1), edge(1, 2), edge(2, 3), edge(0, 3)}
        assert x.is_feasible(tour)
        assert not x.is_solution(tour)

    def test_vertex_cover_full_set(self):
        assert graph(K.VERTEX_COVER, 3, TRIANGLE, 2).is_feasible({vertex(0), vertex(1), vertex(2)})

    def test_knapsack_over_capacity(self):
        x = SspInstance(K.KNAPSACK, KnapsackProblem((1, 1), (2, 3), 4, 0))
        assert not x.is_feasible({item("obj", 0), item("obj", 1)})

    def test_sat_is_not_an_lop(self):
        with pytest.raises(NotAnLop):
            sat(1, []).is_feasible(set())


class TestEnumeration:
    def test_free_variable(self):
        assert sat(1, []).enumerate_solutions().sets() == {frozenset({lit(1)}), frozenset({lit(-1)})}

    def test_triangle_covers(self, single_clause):
        x = graph(K.VERTEX_COVER, 3, TRIANGLE, 2)
        family = x.enumerate_solutions()
        assert family.complete and len(family) == 3
        assert len(x.enumerate_feasible()) == 4

    def test_single_clause_has_seven_models(self, single_clause):
        assert len(single_clause.enumerate_solutions()) == 7

    def test_knapsack_nothing_fits(self):
        x = SspInstance(K.KNAPSACK, KnapsackProblem((1,), (1,), 0, 0))
        assert x.enumerate_feasible().sets() == {frozenset()}

    def test_tsp_triangle_has_one_tour(self):
        x = SspInstance(K.TRAVELING_SALESMAN, TspProblem(3, complete_graph_weights(3), 3))
        assert len(x.enumerate_feasible()) == 1

    def test_small_budget_is_reported(self):
        family = sat(6, []).enumerate_solutions(budget=5)
        assert not family.complete


class TestValidation:
    def test_three_sat_arity(self):
        with pytest.raises(ValidationError, match="clause arity"):
            three_sat(3, [(1, 2)])

    def test_tsp_completeness(self):
        with pytest.raises(ValidationError, match="graph not complete"):
            SspInstance(K.TRAVELING_SALESMAN, TspProblem(3, ((0, 1, 1), (1, 2, 1)), 3))

    def test_valid_triangle(self):
        graph(K.VERTEX_COVER, 3, TRIANGLE, 2)


class TestText:
    def test_dimacs_body(self):
        x = parse_instance("ssp sat v1\np cnf 2 1\n1 2 0\n")
        assert len(x.universe()) == 4

    def test_malformed_header(self):
        with pytest.raises(ParseError):
            parse_instance("ssp sat\np cnf 2 1\n1 2 0\n")

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            parse_instance("ssp bogus v1\n")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_instance("ssp vertex_cover v1\nvertices 3\nk 1\nbanana 4\n")

    def test_parse_error_has_position(self):
        with pytest.raises(ParseError) as info:
            parse_instance("ssp sat v1\np cnf 2 1\n1 x 0\n")
        assert info.value.line == 3

    def test_generated_fixtures_round_trip(self):
        seen = 0
        for r in all_reductions():
            for x in fixtures(r.source, 3):
                for inst in (x, r.apply(x)[0]):
                    text = serialize_instance(inst)
                    assert serialize_instance(parse_instance(text)) == text
                    assert parse_instance(text) == inst
                    seen += 1
        assert seen > 100


class TestCrossChecks:
    @pytest.mark.parametrize("seed", range(5))
    def test_clique_is_independent_set_of_complement(self, seed):
        for x in fixtures(K.INDEPENDENT_SET, 10, seed):
            p = x.payload
            clique = SspInstance(K.CLIQUE, GraphProblem.of(p.num_vertices, p.complement_edges(), p.k))
            assert clique.enumerate_solutions() == x.enumerate_solutions()

    @pytest.mark.parametrize("kind", [K.VERTEX_COVER, K.INDEPENDENT_SET])
    def test_lop_solutions_follow_from_feasibility_and_cost(self, kind):
        for x in fixtures(kind, 15):
            solutions = x.enumerate_solutions().sets()
            for s in all_subsets(x.universe()):
                assert x.is_solution(s) == x.lop_is_solution(s) == (s in solutions)
