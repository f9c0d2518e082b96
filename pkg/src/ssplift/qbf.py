"""Quantified Boolean formulas with a block prefix and a DNF or CNF matrix.

Text format (QDIMACS-like)::

    p dnf 2 2        # or "p cnf <vars> <terms>"
    e 1 0            # one line per quantifier block, outermost first
    a 2 0
    1 2 0            # terms (DNF) or clauses (CNF), each terminated by 0
    1 -2 0

Two evaluators are provided.  :func:`eval_qbf` compiles the matrix to
bitmasks and quantifies one block at a time; :func:`eval_qbf_recursive`
assigns one variable at a time and reads literals directly.  They share no
code beyond the data type, so agreement between them is a meaningful check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from ssplift.core import CapExceeded, ParseError, PrefixMismatch, ValidationError

QBF_VARIABLE_CAP = 22


@dataclass(frozen=True)
class QuantifiedFormula:
    """``blocks`` is a tuple of (quantifier, variables) pairs, outermost first."""

    num_vars: int
    blocks: tuple[tuple[str, tuple[int, ...]], ...]
    matrix: str
    terms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        problems = []
        if self.matrix not in ("dnf", "cnf"):
            problems.append(f"matrix must be dnf or cnf, got {self.matrix!r}")
        seen: set[int] = set()
        for quantifier, variables in self.blocks:
            if quantifier not in ("e", "a"):
                problems.append(f"unknown quantifier {quantifier!r}")
            for v in variables:
                if not 1 <= v <= self.num_vars:
                    problems.append(f"block variable {v} outside 1..{self.num_vars}")
                elif v in seen:
                    problems.append(f"variable {v} is quantified twice")
                seen.add(v)
        missing = set(range(1, self.num_vars + 1)) - seen
        if missing:
            problems.append(f"variable {min(missing)} is not quantified")
        for j, term in enumerate(self.terms, start=1):
            if any(l == 0 or abs(l) > self.num_vars for l in term):
                problems.append(f"term {j} mentions a variable outside 1..{self.num_vars}")
        if problems:
            raise ValidationError(problems)

    @classmethod
    def of(cls, blocks: Iterable[tuple[str, Iterable[int]]], matrix: str, terms, num_vars: int | None = None):
        blocks = tuple((q, tuple(vs)) for q, vs in blocks)
        if num_vars is None:
            num_vars = sum(len(vs) for _, vs in blocks)
        return cls(num_vars, blocks, matrix, tuple(tuple(t) for t in terms))

    @property
    def prefix(self) -> str:
        """Quantifier pattern with adjacent equal blocks merged, e.g. ``"ea"``."""
        out = ""
        for q, vs in self.blocks:
            if vs and not out.endswith(q):
                out += q
        return out

    def block(self, position: int) -> tuple[int, ...]:
        return self.blocks[position][1] if position < len(self.blocks) else ()

    def require(self, prefix: str, matrix: str) -> None:
        """Raise PrefixMismatch unless the declared blocks are exactly ``prefix`` with that matrix.

        Empty blocks are allowed, so ∃∅∀Y counts as an ∃∀ formula.
        """
        shape = "".join(q for q, _ in self.blocks)
        if shape != prefix or self.matrix != matrix:
            want = "".join("∃" if q == "e" else "∀" for q in prefix)
            raise PrefixMismatch(f"expected a {want} {matrix.upper()} formula, got blocks {shape!r} with {self.matrix}")


# ---------------------------------------------------------------------------
# text format


def parse_qbf(text: str) -> QuantifiedFormula:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("c ") or line == "c":
            continue
        rows.append((lineno, line.split()))
    if not rows or rows[0][1][0] != "p":
        raise ParseError("formula must start with 'p dnf|cnf <vars> <terms>'", rows[0][0] if rows else 0, 1)
    lineno, head = rows[0]
    if len(head) != 4 or head[1] not in ("dnf", "cnf"):
        raise ParseError("malformed problem line", lineno, 1)
    num_vars, count = _int(head[2], lineno, 3), _int(head[3], lineno, 4)
    blocks = []
    terms: list[tuple[int, ...]] = []
    current: list[int] = []
    last = lineno
    for lineno, tokens in rows[1:]:
        last = lineno
        if tokens[0] in ("e", "a"):
            if terms or current:
                raise ParseError("quantifier block after the matrix started", lineno, 1)
            values = [_int(t, lineno, col) for col, t in enumerate(tokens[1:], start=2)]
            if not values or values[-1] != 0 or 0 in values[:-1]:
                raise ParseError("quantifier block must end with a single 0", lineno, 1)
            blocks.append((tokens[0], tuple(values[:-1])))
            continue
        for col, tok in enumerate(tokens, start=1):
            value = _int(tok, lineno, col)
            if value == 0:
                terms.append(tuple(current))
                current = []
            else:
                current.append(value)
    if current:
        raise ParseError("last term is not terminated by 0", last, 1)
    if len(terms) != count:
        raise ParseError(f"header announces {count} terms, found {len(terms)}", rows[0][0], 1)
    return QuantifiedFormula(num_vars, tuple(blocks), head[1], tuple(terms))


def _int(token: str, lineno: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno, col) from None


def serialize_qbf(phi: QuantifiedFormula) -> str:
    lines = [f"p {phi.matrix} {phi.num_vars} {len(phi.terms)}"]
    lines += [" ".join([q, *map(str, vs), "0"]) for q, vs in phi.blocks]
    lines += [" ".join([*map(str, t), "0"]) for t in phi.terms]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# evaluators


def _check_cap(phi: QuantifiedFormula, cap: int) -> None:
    if phi.num_vars > cap:
        raise CapExceeded(f"{phi.num_vars} variables exceed the evaluation cap of {cap}")


def _compile(phi: QuantifiedFormula) -> list[tuple[int, int]]:
    """(positive mask, negative mask) per term; variable v is bit v-1."""
    out = []
    for term in phi.terms:
        pos = neg = 0
        for l in term:
            if l > 0:
                pos |= 1 << (l - 1)
            else:
                neg |= 1 << (-l - 1)
        out.append((pos, neg))
    return out


def eval_qbf(phi: QuantifiedFormula, cap: int = QBF_VARIABLE_CAP) -> bool:
    """Truth value by quantifying whole blocks over bitmask assignments."""
    _check_cap(phi, cap)
    compiled = _compile(phi)
    if phi.matrix == "dnf":
        def matrix(a: int) -> bool:
            return any(a & pos == pos and not a & neg for pos, neg in compiled)
    else:
        def matrix(a: int) -> bool:
            return all(a & pos or ~a & neg for pos, neg in compiled)

    blocks = [(q, [1 << (v - 1) for v in vs]) for q, vs in phi.blocks]

    def assignments(bits: list[int]):
        for pattern in range(1 << len(bits)):
            yield sum(b for i, b in enumerate(bits) if pattern >> i & 1)

    def value(position: int, fixed: int) -> bool:
        if position == len(blocks):
            return matrix(fixed)
        quantifier, bits = blocks[position]
        outcomes = (value(position + 1, fixed | a) for a in assignments(bits))
        return any(outcomes) if quantifier == "e" else all(outcomes)

    return value(0, 0)


def eval_qbf_recursive(phi: QuantifiedFormula, cap: int = QBF_VARIABLE_CAP) -> bool:
    """Truth value by branching on one variable at a time in prefix order."""
    _check_cap(phi, cap)
    order = [(q, v) for q, vs in phi.blocks for v in vs]
    values: dict[int, bool] = {}

    def literal_true(l: int) -> bool:
        return values[abs(l)] == (l > 0)

    def matrix() -> bool:
        if phi.matrix == "dnf":
            for term in phi.terms:
                if all(literal_true(l) for l in term):
                    return True
            return False
        for clause in phi.terms:
            if not any(literal_true(l) for l in clause):
                return False
        return True

    def branch(i: int) -> bool:
        if i == len(order):
            return matrix()
        quantifier, v = order[i]
        results = []
        for choice in (False, True):
            values[v] = choice
            results.append(branch(i + 1))
        del values[v]
        return (results[0] or results[1]) if quantifier == "e" else (results[0] and results[1])

    return branch(0)


# ---------------------------------------------------------------------------
# random formulas


def random_qbf(
    rng: random.Random,
    block_sizes: dict[str, int] | list[tuple[str, int]],
    matrix: str,
    max_terms: int = 4,
    max_width: int = 3,
    min_block: int = 1,
) -> QuantifiedFormula:
    """A random formula with the given quantifier blocks.

    Each block gets between ``min_block`` and its listed size variables, numbered
    consecutively in prefix order.  Terms draw distinct variables.
    """
    layout = list(block_sizes.items()) if isinstance(block_sizes, dict) else list(block_sizes)
    blocks = []
    next_var = 1
    for quantifier, size in layout:
        count = rng.randint(min(min_block, size), size)
        blocks.append((quantifier, tuple(range(next_var, next_var + count))))
        next_var += count
    n = next_var - 1
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        width = rng.randint(1, min(max_width, n)) if n else 0
        chosen = rng.sample(range(1, n + 1), width)
        terms.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return QuantifiedFormula(n, tuple(blocks), matrix, tuple(terms))


def random_ea_dnf(rng: random.Random) -> QuantifiedFormula:
    """∃X∀Y DNF with at most 3+3 variables and 4 terms."""
    return random_qbf(rng, [("e", 3), ("a", 3)], "dnf", max_terms=4)


def random_eae_cnf(rng: random.Random) -> QuantifiedFormula:
    """∃X∀Y∃Z CNF with at most 2+2+2 variables."""
    return random_qbf(rng, [("e", 2), ("a", 2), ("e", 2)], "cnf", max_terms=4)


__all__ = [
    "QBF_VARIABLE_CAP",
    "QuantifiedFormula",
    "eval_qbf",
    "eval_qbf_recursive",
    "parse_qbf",
    "random_ea_dnf",
    "random_eae_cnf",
    "random_qbf",
    "serialize_qbf",
]
