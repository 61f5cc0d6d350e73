"""Exact treewidth for small graphs, a brute-force oracle, and cheap bounds.

The exact solver is the classic dynamic programme over sets S of already
eliminated vertices: eliminating v after S costs |Q(S, v)|, the number of
uneliminated vertices outside S + v reachable from v through S.  It is run
as a decision procedure (is there an ordering of width <= k?) layer by layer
on |S|, stopping once the remaining k + 1 vertices can form the final bag.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, bits
from .setsys import BudgetExceeded
from .treedec import TreeDecomposition, validate

log = logging.getLogger(__name__)

DEFAULT_VERTEX_LIMIT = 22
ORACLE_VERTEX_LIMIT = 9


@dataclass
class TreewidthResult:
    lower: int
    upper: int
    witness: TreeDecomposition | None
    method: str  # 'subset-dp', 'permutation-oracle' or 'bounds-only'
    seed_upper: int | None = None  # width of a supplied construction, if any

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | tuple[int, int]:
        return self.lower if self.exact else (self.lower, self.upper)


def q_set(adj: Sequence[int], S: int, v: int) -> int:
    """Vertices outside S + v joined to v by a path whose interior lies in S."""
    vbit = 1 << v
    comp = vbit
    nbr = adj[v]
    frontier = nbr & S
    while frontier:
        comp |= frontier
        while frontier:
            low = frontier & -frontier
            nbr |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nbr & S & ~comp
    return nbr & ~S & ~vbit


def _decide(G: Graph, k: int) -> list[int] | None:
    """An elimination ordering of width <= k, or None if there is none."""
    n = G.n
    if n <= k + 1:
        return list(range(n))
    adj = G.adj
    target = n - k - 1  # after this many eliminations the rest fits in one bag
    parents: list[dict[int, int]] = []  # per layer: S -> last eliminated vertex
    layer = [0]
    for _ in range(target):
        nxt: dict[int, int] = {}
        for S in layer:
            free = ~S & ((1 << n) - 1)
            for v in bits(free):
                S2 = S | (1 << v)
                if S2 in nxt:
                    continue
                if q_set(adj, S, v).bit_count() <= k:
                    nxt[S2] = v
        if not nxt:
            return None
        parents.append(nxt)
        layer = list(nxt)
    # walk back from the first complete state
    S = layer[0]
    prefix = []
    for nxt in reversed(parents):
        v = nxt[S]
        prefix.append(v)
        S &= ~(1 << v)
    prefix.reverse()
    chosen = set(prefix)
    return prefix + [v for v in range(n) if v not in chosen]


def decomposition_from_ordering(G: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``."""
    n = G.n
    if sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of the vertices")
    if n == 0:
        return TreeDecomposition([frozenset()], [])
    adj = list(G.adj)
    pos = {v: i for i, v in enumerate(order)}
    higher: list[int] = []
    for v in order:
        nb = adj[v]
        higher.append(nb)
        for u in bits(nb):
            adj[u] |= nb & ~(1 << u)
            adj[u] &= ~(1 << v)
    bags = [frozenset(bits(h)) | {v} for v, h in zip(order, higher)]
    edges = []
    last = len(order) - 1
    for i, h in enumerate(higher):
        if h:
            parent = min(pos[u] for u in bits(h))
        elif i != last:
            # disconnected piece: hang it off the last bag
            parent = last
        else:
            continue
        edges.append((i, parent))
    return TreeDecomposition(bags, edges)


def ordering_width(G: Graph, order: Sequence[int]) -> int:
    adj = list(G.adj)
    width = 0
    for v in order:
        nb = adj[v]
        width = max(width, nb.bit_count())
        for u in bits(nb):
            adj[u] = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
    return width


# --- lower bounds -----------------------------------------------------------

def degeneracy(G: Graph) -> int:
    """Largest minimum degree seen while repeatedly deleting a min-degree vertex."""
    adj = list(G.adj)
    alive = G.all_mask
    best = 0
    while alive:
        v = min(bits(alive), key=lambda u: (adj[u] & alive).bit_count())
        best = max(best, (adj[v] & alive).bit_count())
        alive &= ~(1 << v)
    return best


def contraction_degeneracy(G: Graph) -> int:
    """Minor-min-width: contract a min-degree vertex into its least-degree neighbour."""
    adj = list(G.adj)
    alive = G.all_mask
    best = 0
    while alive:
        v = min(bits(alive), key=lambda u: ((adj[u] & alive).bit_count(), u))
        nb = adj[v] & alive
        best = max(best, nb.bit_count())
        if nb:
            u = min(bits(nb), key=lambda w: ((adj[w] & alive).bit_count(), w))
            merged = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
            adj[u] = merged
            for w in bits(merged):
                adj[w] = (adj[w] & ~(1 << v)) | (1 << u)
        alive &= ~(1 << v)
    return best


# --- upper bounds -----------------------------------------------------------

def min_fill_ordering(G: Graph) -> list[int]:
    """Greedy ordering: eliminate the vertex adding fewest fill edges (ties: degree, index)."""
    adj = list(G.adj)
    alive = G.all_mask
    order = []
    while alive:
        best_key, best_v = None, -1
        for v in bits(alive):
            nb = adj[v]
            d = nb.bit_count()
            inner = 0
            for u in bits(nb):
                inner += (adj[u] & nb).bit_count()
            fill = d * (d - 1) // 2 - inner // 2
            key = (fill, d, v)
            if best_key is None or key < best_key:
                best_key, best_v = key, v
        v = best_v
        nb = adj[v]
        for u in bits(nb):
            adj[u] = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
        adj[v] = 0
        alive &= ~(1 << v)
        order.append(v)
    return order


def min_degree_ordering(G: Graph) -> list[int]:
    adj = list(G.adj)
    alive = G.all_mask
    order = []
    while alive:
        v = min(bits(alive), key=lambda u: (adj[u].bit_count(), u))
        nb = adj[v]
        for u in bits(nb):
            adj[u] = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
        adj[v] = 0
        alive &= ~(1 << v)
        order.append(v)
    return order


def treewidth_bounds(G: Graph, seed: TreeDecomposition | None = None) -> TreewidthResult:
    """Degeneracy-style lower bound and greedy-elimination upper bound.

    A valid ``seed`` decomposition (e.g. a known construction) competes with
    the greedy orderings for the upper bound.
    """
    if G.n == 0:
        return TreewidthResult(0, 0, None, "bounds-only")
    lower = max(degeneracy(G), contraction_degeneracy(G))
    best = None
    for order in (min_fill_ordering(G), min_degree_ordering(G)):
        w = ordering_width(G, order)
        if best is None or w < best[0]:
            best = (w, order)
    upper, witness = best[0], None
    seed_upper = None
    if seed is not None:
        if not validate(G, seed).valid:
            raise ValueError("seed decomposition is not valid for this graph")
        seed_upper = seed.width()
        if seed_upper <= upper:
            upper, witness = seed_upper, seed
    if witness is None:
        witness = decomposition_from_ordering(G, best[1])
    return TreewidthResult(lower, upper, witness, "bounds-only", seed_upper)


# --- exact ------------------------------------------------------------------

def treewidth_exact(
    G: Graph, vertex_limit: int = DEFAULT_VERTEX_LIMIT, fallback_to_bounds: bool = False
) -> TreewidthResult:
    """Exact treewidth with a witness decomposition of exactly that width.

    Graphs with more than ``vertex_limit`` vertices raise BudgetExceeded, or
    return the bounds-only result when ``fallback_to_bounds`` is set.
    """
    if G.n > vertex_limit:
        if fallback_to_bounds:
            return treewidth_bounds(G)
        raise BudgetExceeded(f"{G.n} vertices exceeds the exact-solver limit {vertex_limit}")
    if G.n == 0:
        # null graph: treewidth 0 by convention, no bag to witness it
        return TreewidthResult(0, 0, None, "subset-dp")
    bounds = treewidth_bounds(G)
    for k in range(bounds.lower, bounds.upper + 1):
        log.debug("deciding tw <= %d on %d vertices", k, G.n)
        order = _decide(G, k)
        if order is not None:
            T = decomposition_from_ordering(G, order)
            if T.width() != k:
                # the ordering reached width < k: lower bound was not tight
                raise AssertionError(f"ordering width {T.width()} disagrees with decision level {k}")
            return TreewidthResult(k, k, T, "subset-dp")
    raise AssertionError("heuristic upper bound was not reachable by the exact search")


def treewidth_permutation_oracle(G: Graph) -> int:
    """Minimum width over all elimination orderings, by exhaustive search."""
    n = G.n
    if n > ORACLE_VERTEX_LIMIT:
        raise BudgetExceeded(f"{n} vertices exceeds the oracle limit {ORACLE_VERTEX_LIMIT}")
    if n == 0:
        return 0
    best = n - 1

    def rec(adj: list[int], remaining: int, width: int) -> None:
        nonlocal best
        if not remaining:
            best = min(best, width)
            return
        for v in bits(remaining):
            nb = adj[v] & remaining
            w = max(width, nb.bit_count())
            if w >= best:
                continue
            child = list(adj)
            for u in bits(nb):
                child[u] |= nb & ~(1 << u)
            rec(child, remaining & ~(1 << v), w)

    rec(list(G.adj), G.all_mask, 0)
    return best
