"""Reduction engine and the catalog of SAT-rooted reductions."""

from ssplift.reductions.catalog import CATALOG, all_reductions, chain, find_path, get_reduction
from ssplift.reductions.engine import (
    Embedding,
    EmbeddingError,
    SspReduction,
    VerificationReport,
    apply,
    compose,
    compose_all,
    verify_equation,
    verify_ssp,
)

__all__ = [
    "CATALOG",
    "Embedding",
    "EmbeddingError",
    "SspReduction",
    "VerificationReport",
    "all_reductions",
    "apply",
    "chain",
    "compose",
    "compose_all",
    "find_path",
    "get_reduction",
    "verify_equation",
    "verify_ssp",
]
