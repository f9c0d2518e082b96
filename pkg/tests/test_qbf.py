import random

import pytest
from hypothesis import given, settings, strategies as st

from ssplift.core import CapExceeded, ParseError, PrefixMismatch, ValidationError
from ssplift.qbf import (
    QuantifiedFormula,
    eval_qbf,
    eval_qbf_recursive,
    parse_qbf,
    random_ea_dnf,
    random_eae_cnf,
    random_qbf,
    serialize_qbf,
)


def ea(matrix, terms):
    return QuantifiedFormula.of([("e", [1]), ("a", [2])], matrix, terms)


class TestSmallFormulas:
    def test_exists_forall_cnf(self):
        phi = ea("cnf", [(1, 2), (1, -2)])
        assert eval_qbf(phi) and eval_qbf_recursive(phi)

    def test_dnf_true_for_x(self):
        phi = ea("dnf", [(1, 2), (1, -2)])
        assert eval_qbf(phi) and eval_qbf_recursive(phi)

    def test_dnf_depends_on_universal(self):
        phi = ea("dnf", [(1, 2)])
        assert not eval_qbf(phi) and not eval_qbf_recursive(phi)

    def test_empty_cnf_is_true_and_empty_dnf_is_false(self):
        assert eval_qbf(ea("cnf", []))
        assert not eval_qbf(ea("dnf", []))

    def test_quantifier_order_matters(self):
        # ∀y ∃x (x ↔ y) holds, ∃x ∀y (x ↔ y) does not
        terms = [(1, -2), (-1, 2)]
        assert eval_qbf(QuantifiedFormula.of([("a", [2]), ("e", [1])], "cnf", terms, 2))
        assert not eval_qbf(ea("cnf", terms))


class TestValidation:
    def test_unquantified_variable(self):
        with pytest.raises(ValidationError):
            QuantifiedFormula.of([("e", [1])], "cnf", [(1, 2)], num_vars=2)

    def test_variable_in_two_blocks(self):
        with pytest.raises(ValidationError):
            QuantifiedFormula.of([("e", [1]), ("a", [1])], "cnf", [], num_vars=1)

    def test_prefix_requirement(self):
        phi = ea("cnf", [(1, 2)])
        with pytest.raises(PrefixMismatch):
            phi.require("ea", "dnf")
        with pytest.raises(PrefixMismatch):
            phi.require("eae", "cnf")
        phi.require("ea", "cnf")

    def test_cap(self):
        phi = QuantifiedFormula.of([("e", range(1, 24))], "cnf", [])
        with pytest.raises(CapExceeded):
            eval_qbf(phi)
        with pytest.raises(CapExceeded):
            eval_qbf_recursive(phi)


class TestText:
    def test_parse(self):
        phi = parse_qbf("c exists x forall y\np dnf 2 2\ne 1 0\na 2 0\n1 2 0\n1 -2 0\n")
        assert phi == ea("dnf", [(1, 2), (1, -2)])
        assert phi.prefix == "ea"

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "p dnf 2\n",
            "p xnf 1 0\ne 1 0\n",
            "p cnf 1 1\ne 1 0\n1\n",
            "p cnf 1 2\ne 1 0\n1 0\n",
            "p cnf 1 1\n1 0\ne 1 0\n",
            "p cnf 1 0\ne 1\n",
            "p cnf 1 1\ne 1 0\n1 x 0\n",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_qbf(text)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10**6))
    def test_round_trip(self, seed):
        phi = random_eae_cnf(random.Random(seed))
        assert parse_qbf(serialize_qbf(phi)) == phi


@settings(max_examples=150, deadline=None)
@given(
    st.integers(0, 10**6),
    st.lists(st.integers(0, 3), min_size=1, max_size=4),
    st.sampled_from(["cnf", "dnf"]),
)
def test_evaluators_agree(seed, sizes, matrix):
    quantifiers = "eaea"
    layout = [(quantifiers[i], size) for i, size in enumerate(sizes)]
    phi = random_qbf(random.Random(seed), layout, matrix, min_block=0)
    assert eval_qbf(phi) == eval_qbf_recursive(phi)


def test_generators_respect_shape():
    rng = random.Random(1)
    for _ in range(30):
        a = random_ea_dnf(rng)
        a.require("ea", "dnf")
        assert len(a.block(0)) <= 3 and len(a.block(1)) <= 3 and len(a.terms) <= 4
        b = random_eae_cnf(rng)
        b.require("eae", "cnf")
        assert all(len(b.block(i)) <= 2 for i in range(3))
