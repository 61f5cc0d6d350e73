"""Kneser graphs K(n, k) and their canonical extremal families.

Vertex i of K(n, k) is the k-set of colex rank i; this numbering is shared
by every module and by the exported files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TextIO

from .graph import Graph
from .setsys import KSet, SetFamily, binom, colex_rank, colex_unrank

DEFAULT_VERTEX_BUDGET = 10**5


@dataclass(frozen=True)
class KneserParams:
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.k < 1:
            raise ValueError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")

    @property
    def regime(self) -> str:
        """One of 'complete' (k=1), 'edgeless' (n<2k), 'matching' (n=2k), 'general'."""
        if self.k == 1:
            return "complete"
        if self.n < 2 * self.k:
            return "edgeless"
        if self.n == 2 * self.k:
            return "matching"
        return "general"

    @property
    def num_vertices(self) -> int:
        return binom(self.n, self.k)

    @property
    def degree(self) -> int:
        return binom(self.n - self.k, self.k)

    def trivial_treewidth(self) -> int | None:
        """Known treewidth in the degenerate regimes, None for the general case."""
        regime = self.regime
        if regime == "complete":
            return self.n - 1
        if regime == "edgeless":
            return 0
        if regime == "matching":
            return 1
        return None


class KneserGraph(Graph):
    def __init__(self, params: KneserParams, adj: list[int], vertices: list[KSet]):
        super().__init__(len(vertices), adj)
        self.params = params
        self.vertices = vertices

    def index(self, s: KSet | tuple[int, ...]) -> int:
        s = s if isinstance(s, KSet) else KSet.of(s)
        if s.arity != self.params.k or (s.elements and s.elements[-1] > self.params.n):
            raise ValueError(f"{s} is not a vertex of K({self.params.n},{self.params.k})")
        return colex_rank(s)

    def label(self, v: int) -> KSet:
        return self.vertices[v]

    def mask_of(self, sets) -> int:
        m = 0
        for s in sets:
            m |= 1 << self.index(s)
        return m


def build(params: KneserParams, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> KneserGraph:
    n, k = params.n, params.k
    nv = params.num_vertices
    if nv > vertex_budget:
        raise ValueError(f"K({n},{k}) has {nv} vertices, over the budget of {vertex_budget}")
    vertices = [colex_unrank(r, k, n) for r in range(nv)]
    adj = [0] * nv
    ground = range(1, n + 1)
    for i, v in enumerate(vertices):
        rest = [e for e in ground if e not in v.elements]
        m = 0
        for other in combinations(rest, k):
            m |= 1 << colex_rank(KSet(other))
        adj[i] = m
    return KneserGraph(params, adj, vertices)


def star_family(i: int, params: KneserParams) -> SetFamily:
    """All k-sets of [n] containing i."""
    n, k = params.n, params.k
    if not 1 <= i <= n:
        raise ValueError(f"element {i} outside [1, {n}]")
    others = [e for e in range(1, n + 1) if e != i]
    return SetFamily.of(n, k, (KSet.of((i,) + c) for c in combinations(others, k - 1)))


@dataclass(frozen=True)
class ThresholdReport:
    theorem1_threshold: int
    keylemma_threshold: int
    theorem1_applies: bool
    keylemma_applies: bool


def threshold_check(params: KneserParams, p: Fraction) -> ThresholdReport:
    """Whether n clears the large-n thresholds for exact treewidth and for separators.

    The main treewidth formula needs n >= 4k^2 - 4k + 3 (and k >= 3); the
    separator bound needs n >= max(that, (k^2 - 1)/(1 - p) + 2).
    """
    p = Fraction(p)
    if not Fraction(2, 3) <= p < 1:
        raise ValueError(f"p={p} outside [2/3, 1)")
    n, k = params.n, params.k
    t1 = 4 * k * k - 4 * k + 3
    t_sep = Fraction(k * k - 1) / (1 - p) + 2
    t_key = max(t1, math.ceil(t_sep))
    return ThresholdReport(
        theorem1_threshold=t1,
        keylemma_threshold=t_key,
        theorem1_applies=k >= 3 and n >= t1,
        keylemma_applies=n >= t_key,
    )


def export_graph(G: Graph, sink: TextIO) -> None:
    from .formats import write_gr

    write_gr(G, sink)
