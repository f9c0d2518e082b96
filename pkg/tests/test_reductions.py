import random

import pytest

from ssplift.core import ConstructionOverflow, KindMismatch, ProblemKind as K, SspInstance
from ssplift.generators import fixtures, random_sat
from ssplift.problems import UHamCycleProblem, edge, lit
from ssplift.reductions import (
    Embedding,
    EmbeddingError,
    SspReduction,
    all_reductions,
    chain,
    compose,
    find_path,
    get_reduction,
    verify_ssp,
)

from conftest import sat, three_sat

SOUND = [r.id for r in all_reductions() if r.id != "3sat_to_2ddp"]


class TestCatalog:
    def test_lookup(self):
        assert get_reduction("3sat_to_vertex_cover").target is K.VERTEX_COVER
        with pytest.raises(KindMismatch):
            get_reduction("no_such_reduction")

    def test_every_entry_reachable_from_sat(self):
        for r in all_reductions():
            assert find_path(K.SATISFIABILITY, r.target)

    def test_wrong_source_kind(self):
        with pytest.raises(KindMismatch):
            get_reduction("3sat_to_vertex_cover").apply(sat(1, [(1,)]))


class TestWorkedExamples:
    def test_single_clause_vertex_cover(self, single_clause):
        y, f = get_reduction("3sat_to_vertex_cover").apply(single_clause)
        assert len(y.universe()) == 9
        assert len(y.payload.edges) == 9
        assert y.payload.k == 5
        report = verify_ssp(get_reduction("3sat_to_vertex_cover"), single_clause)
        assert report.status == "ok" and len(report.left) == 7

    def test_split_of_four_literal_clause(self):
        y, f = get_reduction("sat_to_3sat").apply(sat(4, [(1, 2, 3, 4)]))
        assert y.payload.clauses == ((1, 2, 5), (-5, 3, 4))
        assert f(lit(-3)) == lit(-3)

    def test_empty_clause_gives_no_instance_on_both_sides(self):
        report = verify_ssp(get_reduction("sat_to_3sat"), sat(1, [()]))
        assert report.status == "ok"
        assert report.left.is_empty() and report.right.is_empty()

    def test_triangle_to_tsp(self):
        x = SspInstance(K.UNDIRECTED_HAMILTONIAN_CYCLE, UHamCycleProblem(3, ((0, 1), (1, 2), (0, 2))))
        r = get_reduction("uham_cycle_to_tsp")
        y, f = r.apply(x)
        assert y.payload.k == 0
        assert f.image() == {edge(0, 1), edge(1, 2), edge(0, 2)}
        assert verify_ssp(r, x).status == "ok"


class TestVerification:
    @pytest.mark.parametrize("rid", SOUND)
    def test_sound_reductions_on_fixtures(self, rid):
        r = get_reduction(rid)
        for x in fixtures(r.source, 8, seed=11):
            report = verify_ssp(r, x)
            assert report.status == "ok", (rid, report.lines())

    def test_corrupted_threshold_is_caught(self):
        honest = get_reduction("3sat_to_vertex_cover")

        def tighter(x):
            y, f = honest.apply(x)
            p = y.payload
            return SspInstance(K.VERTEX_COVER, type(p).of(p.num_vertices, p.edges, p.k - 1)), f.mapping

        broken = SspReduction("tight_cover", K.THREE_SATISFIABILITY, K.VERTEX_COVER, tighter)
        report = verify_ssp(broken, three_sat(3, [(-1, -2, 3)]))
        assert report.status == "mismatch"
        assert report.witness_side == "source-only"
        assert any(line.startswith("witness:") for line in report.lines())

    def test_budget_exhaustion_is_not_a_pass(self, single_clause):
        report = verify_ssp(get_reduction("3sat_to_vertex_cover"), single_clause, budget=3)
        assert report.status == "budget-exceeded"
        assert not report.passed


class TestComposition:
    def test_kind_check(self):
        with pytest.raises(KindMismatch):
            compose(get_reduction("3sat_to_vertex_cover"), get_reduction("3sat_to_subset_sum"))

    @pytest.mark.parametrize("seed", range(4))
    def test_associative(self, seed):
        r1, r2, r3 = (get_reduction(i) for i in ("sat_to_3sat", "3sat_to_vertex_cover", "vertex_cover_to_hitting_set"))
        x = fixtures(K.SATISFIABILITY, 1, seed)[0]
        left = compose(compose(r1, r2), r3).apply(x)
        right = compose(r1, compose(r2, r3)).apply(x)
        assert left == right

    def test_chain_verifies(self):
        r = chain(find_path(K.SATISFIABILITY, K.CLIQUE))
        rng = random.Random(3)
        for _ in range(5):
            x = random_sat(rng, max_vars=3, max_clauses=2, max_width=3, min_width=2)
            assert verify_ssp(r, x).status == "ok"


class TestEmbedding:
    def _universes(self):
        from ssplift.core import Universe

        return Universe([lit(1), lit(-1)]), Universe([lit(1), lit(-1), lit(2)])

    def test_not_injective(self):
        src, tgt = self._universes()
        with pytest.raises(EmbeddingError):
            Embedding(src, tgt, {lit(1): lit(2), lit(-1): lit(2)})

    def test_partial(self):
        src, tgt = self._universes()
        with pytest.raises(EmbeddingError):
            Embedding(src, tgt, {lit(1): lit(2)})

    def test_serialize(self):
        src, tgt = self._universes()
        f = Embedding(src, tgt, {lit(1): lit(2), lit(-1): lit(1)})
        assert f.serialize().splitlines() == [f"{e} {f(e)}" for e in src]


def test_digit_table_past_64_bits_is_a_construction_error():
    x = three_sat(10, [(1, 2, 3)] * 10)
    with pytest.raises(ConstructionOverflow):
        get_reduction("3sat_to_subset_sum").apply(x)


@pytest.mark.xfail(strict=True, reason="the literal-corridor construction lets clause paths cross-route")
def test_two_disjoint_paths_counterexample():
    x = three_sat(3, [(1, 2, -3), (2, -3, -1), (-3, 2, 1)])
    assert verify_ssp(get_reduction("3sat_to_2ddp"), x).status == "ok"
