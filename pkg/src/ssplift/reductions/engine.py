"""SSP reductions as values: embeddings, application, composition, verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from ssplift.core import (
    Budget,
    ConstructionOverflow,
    ElementId,
    IntegerOverflow,
    KindMismatch,
    ProblemKind,
    SolutionFamily,
    SolutionSpace,
    SspError,
    SspInstance,
    Universe,
    format_subset,
    _as_budget,
)


class EmbeddingError(SspError):
    """An embedding is not total, not injective or leaves the target universe."""


@dataclass(frozen=True)
class Embedding:
    """Injective map from a source universe into a target universe."""

    source: Universe
    target: Universe
    mapping: Mapping[ElementId, ElementId]

    def __post_init__(self) -> None:
        mapping = dict(self.mapping)
        missing = [e for e in self.source if e not in mapping]
        if missing:
            raise EmbeddingError(f"embedding undefined on {missing[0]}")
        extra = [e for e in mapping if e not in self.source]
        if extra:
            raise EmbeddingError(f"embedding defined outside the source universe at {extra[0]}")
        outside = [v for v in mapping.values() if v not in self.target]
        if outside:
            raise EmbeddingError(f"embedding image {outside[0]} is not in the target universe")
        if len(set(mapping.values())) != len(mapping):
            raise EmbeddingError("embedding is not injective")
        object.__setattr__(self, "mapping", MappingProxyType(mapping))

    def __call__(self, e: ElementId) -> ElementId:
        return self.mapping[e]

    def image(self, subset: Iterable[ElementId] | None = None) -> frozenset[ElementId]:
        if subset is None:
            return frozenset(self.mapping.values())
        return frozenset(self.mapping[e] for e in subset)

    def then(self, other: "Embedding") -> "Embedding":
        """``other ∘ self``: first this embedding, then ``other``."""
        return Embedding(self.source, other.target, {e: other(v) for e, v in self.mapping.items()})

    def serialize(self) -> str:
        return "".join(f"{e} {self.mapping[e]}\n" for e in self.source)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Embedding)
            and self.source == other.source
            and self.target == other.target
            and dict(self.mapping) == dict(other.mapping)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.mapping.items()))))


Builder = Callable[[SspInstance], tuple[SspInstance, Mapping[ElementId, ElementId]]]


@dataclass(frozen=True)
class SspReduction:
    """Instance transformer plus per-instance embedding builder."""

    id: str
    source: ProblemKind
    target: ProblemKind
    build: Builder = field(repr=False, compare=False)
    provenance: str = "catalog"
    summary: str = ""

    def apply(self, x: SspInstance) -> tuple[SspInstance, Embedding]:
        if x.kind is not self.source:
            raise KindMismatch(f"{self.id} expects {self.source.value}, got {x.kind.value}")
        try:
            y, mapping = self.build(x)
        except ConstructionOverflow:
            raise
        except IntegerOverflow as exc:
            raise ConstructionOverflow(f"{self.id}: {exc}") from None
        if y.kind is not self.target:
            raise KindMismatch(f"{self.id} produced {y.kind.value}, expected {self.target.value}")
        return y, Embedding(x.universe(), y.universe(), mapping)


def apply(r: SspReduction, x: SspInstance) -> tuple[SspInstance, Embedding]:
    return r.apply(x)


def compose(r1: SspReduction, r2: SspReduction) -> SspReduction:
    """Run ``r1`` then ``r2``; embeddings compose as ``f2 ∘ f1``."""
    if r1.target is not r2.source:
        raise KindMismatch(f"cannot compose {r1.id} (to {r1.target.value}) with {r2.id} (from {r2.source.value})")

    def build(x: SspInstance):
        y1, f1 = r1.apply(x)
        y2, f2 = r2.apply(y1)
        return y2, f1.then(f2).mapping

    return SspReduction(f"{r1.id},{r2.id}", r1.source, r2.target, build, "composed")


def compose_all(reductions: Iterable[SspReduction]) -> SspReduction:
    chain = list(reductions)
    if not chain:
        raise ValueError("empty reduction chain")
    out = chain[0]
    for r in chain[1:]:
        out = compose(out, r)
    return out


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking ``{f(S) : S ∈ S(x)} = {S' ∩ f(U(x)) : S' ∈ S(y)}``."""

    left: SolutionFamily
    right: SolutionFamily
    equal: bool
    yes_agreement: bool
    status: str  # "ok", "mismatch" or "budget-exceeded"
    witness: tuple[ElementId, ...] | None = None
    witness_side: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "ok"

    def lines(self) -> list[str]:
        out = [
            f"status: {self.status}",
            f"left-size: {len(self.left) if self.left.complete else 'incomplete'}",
            f"right-size: {len(self.right) if self.right.complete else 'incomplete'}",
            f"equal: {str(self.equal).lower()}",
            f"yes-agreement: {str(self.yes_agreement).lower()}",
        ]
        if self.witness is not None:
            out.append(f"witness: {self.witness_side} {format_subset(self.witness)}")
        return out


def verify_equation(
    x: SolutionSpace, y: SolutionSpace, f: Embedding, budget: int | Budget | None = None
) -> VerificationReport:
    """Check the solution-preserving equation for one source/target pair.

    Each side gets its own budget of the given size.  An incomplete
    enumeration on either side yields status ``budget-exceeded`` and never
    counts as a pass.
    """
    limit = budget.limit if isinstance(budget, Budget) else budget
    source = x.enumerate_solutions(_as_budget(limit))
    left = SolutionFamily.of((f.image(s) for s in source), source.complete)
    right = y.project_solutions(f.image(), _as_budget(limit))
    if not (left.complete and right.complete):
        return VerificationReport(left, right, False, False, "budget-exceeded")
    equal = left.members == right.members
    yes = left.is_empty() == right.is_empty()
    witness = side = None
    if not equal:
        only_left = sorted(set(left.members) - set(right.members))
        only_right = sorted(set(right.members) - set(left.members))
        if only_left:
            witness, side = only_left[0], "source-only"
        else:
            witness, side = only_right[0], "target-only"
    status = "ok" if equal and yes else "mismatch"
    return VerificationReport(left, right, equal, yes, status, witness, side)


def verify_ssp(r: SspReduction, x: SspInstance, budget: int | Budget | None = None) -> VerificationReport:
    y, f = r.apply(x)
    return verify_equation(x, y, f, budget)


__all__ = [
    "Embedding",
    "EmbeddingError",
    "SspReduction",
    "VerificationReport",
    "apply",
    "compose",
    "compose_all",
    "verify_equation",
    "verify_ssp",
]
