"""Tree decompositions, exact treewidth and extremal set checks for Kneser graphs."""

from .graph import Graph
from .kneser import KneserGraph, KneserParams, build, star_family
from .setsys import KSet, SetFamily
from .treedec import TreeDecomposition, validate

__all__ = [
    "Graph",
    "KneserGraph",
    "KneserParams",
    "KSet",
    "SetFamily",
    "TreeDecomposition",
    "build",
    "star_family",
    "validate",
]
