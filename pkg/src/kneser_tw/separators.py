"""Balanced separators: p-separator checks, bipartition, exhaustive search.

p is always a Fraction; the balance test ``size <= p * |G - X|`` is done
in exact integer arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph, bits, to_mask
from .setsys import BudgetExceeded
from .treedec import TreeDecomposition, validate

TWO_THIRDS = Fraction(2, 3)

# bound profiles for a bipartition (A, B) of G - X, |G - X| = m:
#   'lemma':     (1-p)m <= |A| <= m/2 <= |B| <= pm
#   'symmetric': (1-p)m <= |A|, |B| <= pm
LEMMA, SYMMETRIC = "lemma", "symmetric"


def _check_p(p) -> Fraction:
    p = Fraction(p)
    if not TWO_THIRDS <= p < 1:
        raise ValueError(f"p={p} outside [2/3, 1)")
    return p


def _fits(size: int, total: int, p: Fraction) -> bool:
    return size * p.denominator <= p.numerator * total


@dataclass
class SeparatorReport:
    graph: Graph
    X: int  # vertex mask
    p: Fraction
    components: list[int]  # component masks of G - X

    @property
    def rest_size(self) -> int:
        return self.graph.n - self.X.bit_count()

    @property
    def component_sizes(self) -> list[int]:
        return sorted((c.bit_count() for c in self.components), reverse=True)

    @property
    def is_p_separator(self) -> bool:
        total = self.rest_size
        return all(_fits(c.bit_count(), total, self.p) for c in self.components)

    @property
    def order(self) -> int:
        return self.X.bit_count()

    def vertices(self) -> list[int]:
        return list(bits(self.X))


def check_separator(G: Graph, X, p) -> SeparatorReport:
    p = _check_p(p)
    Xm = X if isinstance(X, int) else to_mask(X)
    return SeparatorReport(G, Xm, p, G.components(G.all_mask & ~Xm))


def is_p_separator(G: Graph, Xm: int, p: Fraction) -> bool:
    """Fast path of check_separator(...).is_p_separator for search loops."""
    rest = G.all_mask & ~Xm
    total = rest.bit_count()
    cap = p.numerator * total
    den = p.denominator
    adj = G.adj
    while rest:
        low = rest & -rest
        comp = frontier = low
        while frontier:
            nxt = 0
            while frontier:
                b = frontier & -frontier
                nxt |= adj[b.bit_length() - 1]
                frontier ^= b
            frontier = nxt & rest & ~comp
            comp |= frontier
        if comp.bit_count() * den > cap:
            return False
        rest &= ~comp
    return True


@dataclass
class Bipartition:
    A: int
    B: int
    profiles: tuple[str, ...]  # which bound profiles the split satisfies


def satisfied_profiles(a: int, b: int, p: Fraction) -> tuple[str, ...]:
    m = a + b
    lo_ok = lambda s: s * p.denominator >= (p.denominator - p.numerator) * m
    out = []
    if lo_ok(a) and 2 * a <= m <= 2 * b and _fits(b, m, p):
        out.append(LEMMA)
    if lo_ok(a) and lo_ok(b) and _fits(a, m, p) and _fits(b, m, p):
        out.append(SYMMETRIC)
    return tuple(out)


def bipartition(report: SeparatorReport) -> Bipartition | None:
    """Split the components of G - X into sides A (smaller) and B.

    First-fit decreasing, then an exact subset-sum over component sizes if
    the greedy split misses the bounds.  Returns None when no grouping of
    components meets the lemma bounds; raises if X is not a p-separator.
    """
    if not report.is_p_separator:
        raise ValueError("X is not a p-separator")
    m = report.rest_size
    if m == 0:
        raise ValueError("G - X is empty")
    p = report.p
    comps = sorted(report.components, key=lambda c: (-c.bit_count(), c))

    # first-fit decreasing: each component to the currently lighter side
    sides = [0, 0]
    sizes = [0, 0]
    for c in comps:
        i = 0 if sizes[0] <= sizes[1] else 1
        sides[i] |= c
        sizes[i] += c.bit_count()
    A, B = (sides[0], sides[1]) if sizes[0] <= sizes[1] else (sides[1], sides[0])
    if LEMMA in satisfied_profiles(A.bit_count(), B.bit_count(), p):
        return Bipartition(A, B, satisfied_profiles(A.bit_count(), B.bit_count(), p))

    # exact: reachable side sizes with the components realising them
    reach: dict[int, int] = {0: 0}
    for c in comps:
        s = c.bit_count()
        for total, mask in list(reach.items()):
            reach.setdefault(total + s, mask | c)
    lo = math.ceil((1 - p) * m)
    for a in range(m // 2, lo - 1, -1):
        if a in reach and LEMMA in satisfied_profiles(a, m - a, p):
            A = reach[a]
            B = report.graph.all_mask & ~report.X & ~A
            return Bipartition(A, B, satisfied_profiles(a, m - a, p))
    return None


@dataclass
class MinSeparatorResult:
    order: int | None  # None: no p-separator of order <= cap
    separator: list[int] | None
    cap: int
    checked: int

    @property
    def exceeds_cap(self) -> bool:
        return self.order is None


def _scan_size(G: Graph, size: int, p: Fraction, first: int | None = None) -> tuple[int | None, int]:
    """First p-separator of exactly ``size`` vertices (colex-ish order); restrict
    the smallest member to ``first`` when given, for splitting work."""
    n = G.n
    checked = 0
    if first is None:
        pool = combinations(range(n), size)
    else:
        pool = ((first,) + rest for rest in combinations(range(first + 1, n), size - 1))
    for X in pool:
        m = 0
        for v in X:
            m |= 1 << v
        checked += 1
        if is_p_separator(G, m, p):
            return m, checked
    return None, checked


def _scan_task(args):
    G, size, p, first = args
    return _scan_size(G, size, p, first)


def min_separator_order(
    G: Graph, p, size_cap: int, budget: int = 50_000_000, threads: int = 1
) -> MinSeparatorResult:
    """Smallest p-separator with at most ``size_cap`` vertices, by exhaustive search.

    Sizes are tried in increasing order; a result with ``order is None``
    certifies that no p-separator of order <= size_cap exists.
    """
    p = _check_p(p)
    n = G.n
    size_cap = min(size_cap, n)
    total = sum(math.comb(n, s) for s in range(size_cap + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} candidate sets exceeds budget {budget}")
    checked = 0
    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    try:
        for size in range(size_cap + 1):
            if pool is None or size == 0:
                found, c = _scan_size(G, size, p)
                checked += c
            else:
                found = None
                tasks = [(G, size, p, f) for f in range(n - size + 1)]
                for f, c in pool.map(_scan_task, tasks):
                    checked += c
                    if found is None and f is not None:
                        found = f
            if found is not None:
                return MinSeparatorResult(size, list(bits(found)), size_cap, checked)
    finally:
        if pool is not None:
            pool.shutdown()
    return MinSeparatorResult(None, None, size_cap, checked)


def separator_from_bag(
    G: Graph, T: TreeDecomposition, p, subset_budget: int = 1 << 20
) -> list[int]:
    """A p-separator contained in a bag of T.

    Bags are tried in node order and, within a bag, subsets from largest to
    smallest; a whole bag is not always balanced (a path on three vertices
    needs its middle vertex alone).
    """
    p = _check_p(p)
    verdict = validate(G, T)
    if not verdict.valid:
        raise ValueError(f"invalid decomposition: {verdict.violations[0]}")
    spent = 0
    for bag in T.bags:
        members = sorted(bag)
        for size in range(len(members), -1, -1):
            for X in combinations(members, size):
                spent += 1
                if spent > subset_budget:
                    raise BudgetExceeded(f"more than {subset_budget} bag subsets tried")
                if is_p_separator(G, to_mask(X), p):
                    return list(X)
    raise AssertionError("no bag of the decomposition contains a p-separator")
