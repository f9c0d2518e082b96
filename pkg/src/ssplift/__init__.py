"""Solution-preserving reductions between subset search problems and their
min-max robust variants, checked by exhaustive enumeration."""

__version__ = "0.1.0"
