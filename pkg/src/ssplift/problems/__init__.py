"""The 24 catalog problems.  Importing this package registers every kind."""

from ssplift.problems import covering, facility, feedback, graphs, hamilton, numbers, paths, sat  # noqa: F401  (register kinds)
from ssplift.problems.covering import SetSystem
from ssplift.problems.facility import FacilityProblem
from ssplift.problems.feedback import DigraphProblem
from ssplift.problems.graphs import GraphProblem
from ssplift.problems.hamilton import HamCycleProblem, HamPathProblem, TspProblem, UHamCycleProblem
from ssplift.problems.numbers import KnapsackProblem, PartitionProblem, SchedulingProblem, SubsetSumProblem
from ssplift.problems.paths import DisjointPathsProblem, SteinerProblem
from ssplift.problems.sat import CnfFormula
from ssplift.problems.text import parse_document, parse_instance, serialize_instance
from ssplift.problems._common import arc, edge, item, lit, vertex

__all__ = [
    "CnfFormula",
    "DigraphProblem",
    "DisjointPathsProblem",
    "FacilityProblem",
    "GraphProblem",
    "HamCycleProblem",
    "HamPathProblem",
    "KnapsackProblem",
    "PartitionProblem",
    "SchedulingProblem",
    "SetSystem",
    "SteinerProblem",
    "SubsetSumProblem",
    "TspProblem",
    "UHamCycleProblem",
    "arc",
    "edge",
    "item",
    "lit",
    "parse_document",
    "parse_instance",
    "serialize_instance",
    "vertex",
]
