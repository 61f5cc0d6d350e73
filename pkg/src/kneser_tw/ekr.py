"""Brute-force checks of the intersecting-family results on Kneser graphs.

Covers the independence number, the product bound for cross-intersecting
pairs (with its uniqueness clause), and the complete-multipartite bound,
for which only a verifier and a randomised counterexample search exist.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph, bits
from .kneser import KneserGraph, KneserParams, build, star_family, threshold_check
from .setsys import BudgetExceeded, KSet, binom

log = logging.getLogger(__name__)


# --- independence number ----------------------------------------------------

def max_independent_set(G: Graph, vertex_budget: int = 40) -> list[int]:
    """A maximum independent set, by branch and bound on cliques of the complement.

    Greedy colouring of the candidate set bounds each branch; vertices are
    taken in index order so the returned set is deterministic.
    """
    n = G.n
    if n > vertex_budget:
        raise BudgetExceeded(f"{n} vertices exceeds independent-set budget {vertex_budget}")
    full = G.all_mask
    comp = [full & ~G.adj[v] & ~(1 << v) for v in range(n)]
    best: list[int] = []

    def colour_order(P: int) -> list[tuple[int, int]]:
        # (vertex, colour number) with colours non-decreasing
        out = []
        colour = 0
        uncoloured = P
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                v = (avail & -avail).bit_length() - 1
                out.append((v, colour))
                uncoloured &= ~(1 << v)
                avail &= ~(1 << v) & ~comp[v]
        return out

    def expand(R: list[int], P: int) -> None:
        nonlocal best
        for v, c in reversed(colour_order(P)):
            if len(R) + c <= len(best):
                return
            R.append(v)
            sub = P & comp[v]
            if sub:
                expand(R, sub)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    expand([], full)
    return sorted(best)


# --- cross-intersecting pairs ----------------------------------------------

@dataclass
class CrossProductResult:
    A: list[int]
    B: list[int]
    product: int
    optima: list[tuple[list[int], list[int]]] = field(default_factory=list)


def _neighbourhood_table(G: Graph) -> np.ndarray:
    """N(A) as a bitmask for every subset A (indexed by its mask)."""
    n = G.n
    dtype = np.uint32 if n <= 32 else np.uint64
    table = np.zeros(1 << n, dtype=dtype)
    for i in range(n):
        lo = 1 << i
        table[lo : 2 * lo] = table[:lo] | dtype(G.adj[i])
    return table


def max_cross_product(G: Graph, vertex_budget: int = 22) -> CrossProductResult:
    """Maximise |A| * |B| over cross-intersecting pairs (no edge from A to B).

    Only A is enumerated: the best partner is B = V - N(A).  Every optimal
    pair found is recorded in ``optima``.
    """
    n = G.n
    if n > vertex_budget:
        raise BudgetExceeded(f"2^{n} subsets exceeds the budget of 2^{vertex_budget}")
    table = _neighbourhood_table(G)
    a_size = np.bitwise_count(np.arange(1 << n, dtype=table.dtype)).astype(np.int64)
    b_size = n - np.bitwise_count(table).astype(np.int64)
    product = a_size * b_size
    best = int(product.max())
    full = G.all_mask
    optima = []
    for A in np.flatnonzero(product == best):
        A = int(A)
        B = full & ~int(table[A])
        optima.append((list(bits(A)), list(bits(B))))
    A, B = optima[0]
    return CrossProductResult(A, B, best, optima)


def is_cross_intersecting(G: Graph, A, B) -> bool:
    Bm = 0
    for v in B:
        Bm |= 1 << v
    return not any(G.adj[a] & Bm for a in A)


def check_product_bound(G: KneserGraph, A, B) -> None:
    """Raise AssertionError if (A, B) is cross-intersecting yet |A||B| > C(n-1,k-1)^2."""
    A, B = list(A), list(B)
    if not is_cross_intersecting(G, A, B):
        return
    bound = binom(G.params.n - 1, G.params.k - 1) ** 2
    if G.params.n >= 2 * G.params.k and len(A) * len(B) > bound:
        raise AssertionError(f"cross-intersecting pair with product {len(A) * len(B)} > {bound}")


def star_indices(G: KneserGraph, i: int) -> list[int]:
    return sorted(G.index(s) for s in star_family(i, G.params))


def is_star(G: KneserGraph, vertices) -> int | None:
    """The element i if ``vertices`` is exactly the star of i, else None."""
    vs = sorted(vertices)
    for i in range(1, G.params.n + 1):
        if vs == star_indices(G, i):
            return i
    return None


# --- complete multipartite subgraphs of the complement ---------------------

@dataclass
class MultipartiteWitness:
    classes: list[list[KSet]]
    p: Fraction

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.classes)


@dataclass
class MultipartiteVerdict:
    size: int
    bound: int
    cross_intersecting: bool
    balanced: bool
    hypotheses_hold: bool
    disjoint_pair: tuple[KSet, KSet] | None = None

    @property
    def is_witness(self) -> bool:
        return self.cross_intersecting and self.balanced

    @property
    def within_bound(self) -> bool:
        return self.size <= self.bound

    @property
    def theorem_violation(self) -> bool:
        return self.is_witness and self.hypotheses_hold and not self.within_bound


def verify_multipartite(witness: MultipartiteWitness, params: KneserParams) -> MultipartiteVerdict:
    n, k = params.n, params.k
    p = Fraction(witness.p)
    seen: set[KSet] = set()
    for cls in witness.classes:
        for v in cls:
            if v.arity != k or not v.elements or v.elements[-1] > n:
                raise ValueError(f"{v} is not a {k}-set of [{n}]")
            if v in seen:
                raise ValueError(f"{v} appears in more than one place")
            seen.add(v)
    disjoint = None
    for i, ci in enumerate(witness.classes):
        for cj in witness.classes[i + 1 :]:
            for u in ci:
                for w in cj:
                    if not u.mask & w.mask:
                        disjoint = (u, w)
                        break
                if disjoint:
                    break
            if disjoint:
                break
        if disjoint:
            break
    size = witness.size
    largest = max((len(c) for c in witness.classes), default=0)
    balanced = largest * p.denominator <= p.numerator * size
    try:
        hyp = threshold_check(params, p).keylemma_applies
    except ValueError:
        hyp = False
    return MultipartiteVerdict(
        size=size,
        bound=binom(n - 1, k - 1),
        cross_intersecting=disjoint is None,
        balanced=balanced,
        hypotheses_hold=hyp,
        disjoint_pair=disjoint,
    )


def split_star_witness(params: KneserParams, p: Fraction, i: int = 1) -> MultipartiteWitness:
    """The star of i split into two halves: a witness meeting the bound exactly."""
    members = list(star_family(i, params))
    half = (len(members) + 1) // 2
    return MultipartiteWitness([members[:half], members[half:]], Fraction(p))


@dataclass
class HuntResult:
    best_size: int
    best_witness: MultipartiteWitness
    bound: int
    in_scope: bool
    iterations: int

    @property
    def alarm(self) -> bool:
        """True if a valid witness beat the bound while the hypotheses hold."""
        return self.in_scope and self.best_size > self.bound


def hunt_multipartite(
    params: KneserParams,
    p,
    budget: int = 100_000,
    seed: int = 0,
    init: MultipartiteWitness | None = None,
    restart_every: int = 5_000,
    G: KneserGraph | None = None,
) -> HuntResult:
    """Randomised local search for a large balanced multipartite witness.

    The state is a list of colour classes whose cross pairs all intersect.
    Moves add a vertex, move one between classes, drop one, or merge two
    classes; balance may lapse mid-search, only balanced states are scored.
    """
    p = Fraction(p)
    G = G if G is not None else build(params)
    try:
        in_scope = threshold_check(params, p).keylemma_applies
    except ValueError:
        in_scope = False
    if not in_scope:
        log.warning("K(%d,%d) with p=%s is outside the theorem's hypotheses", params.n, params.k, p)
    rng = random.Random(seed)
    adj = G.adj
    free = G.all_mask
    num, den = p.numerator, p.denominator

    def start() -> list[int]:
        if init is None:
            return []
        return [G.mask_of(c) for c in init.classes if c]

    def balanced(classes: list[int], size: int) -> bool:
        return size > 0 and all(c.bit_count() * den <= num * size for c in classes)

    best_size = 0
    best_classes: list[int] = []
    classes = start()
    H = 0
    for c in classes:
        H |= c
    size = H.bit_count()
    if balanced(classes, size):
        best_size, best_classes = size, list(classes)

    for it in range(budget):
        if restart_every and it and it % restart_every == 0:
            classes = start()
            H = 0
            for c in classes:
                H |= c
            size = H.bit_count()
        r = rng.random()
        if r < 0.6 or size == 0:
            # add a vertex outside H that intersects everything in the other classes
            options = []
            for j, c in enumerate(classes):
                ok = free & ~H & ~G.neighborhood(H & ~c)
                if ok:
                    options.append((j, ok))
            ok = free & ~H & ~G.neighborhood(H)
            if ok:
                options.append((len(classes), ok))
            if not options:
                r = 0.9  # stuck: fall through to a drop
            else:
                if rng.random() < 0.5:
                    j, ok = min(options, key=lambda o: classes[o[0]].bit_count() if o[0] < len(classes) else 0)
                else:
                    j, ok = rng.choice(options)
                v = rng.choice(list(bits(ok)))
                if j == len(classes):
                    classes.append(0)
                classes[j] |= 1 << v
                H |= 1 << v
                size += 1
        if 0.6 <= r < 0.85:
            # move a vertex to another (or a new) class
            i = rng.randrange(len(classes))
            members = list(bits(classes[i]))
            v = rng.choice(members)
            rest = H & ~(1 << v)
            options = [j for j, c in enumerate(classes) if j != i and not adj[v] & (rest & ~c)]
            if not adj[v] & rest and len(members) > 1:
                options.append(len(classes))
            if not options:
                continue
            j = rng.choice(options)
            if j == len(classes):
                classes.append(0)
            classes[i] &= ~(1 << v)
            classes[j] |= 1 << v
        elif 0.85 <= r < 0.97 and size:
            # drop a vertex
            i = rng.randrange(len(classes))
            v = rng.choice(list(bits(classes[i])))
            classes[i] &= ~(1 << v)
            H &= ~(1 << v)
            size -= 1
        elif r >= 0.97:
            if len(classes) < 3:
                continue
            i, j = rng.sample(range(len(classes)), 2)
            classes[i] |= classes[j]
            classes[j] = 0
        classes = [c for c in classes if c]
        if size > best_size and balanced(classes, size):
            best_size, best_classes = size, list(classes)

    witness = MultipartiteWitness([[G.label(v) for v in bits(c)] for c in best_classes], p)
    bound = binom(params.n - 1, params.k - 1)
    result = HuntResult(best_size, witness, bound, in_scope, budget)
    if result.alarm:
        log.error("balanced multipartite witness of size %d beats the bound %d", best_size, bound)
    return result
