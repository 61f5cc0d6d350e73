"""Set-system primitives over a ground set [b] = {1, ..., b}.

Sets are kept as sorted tuples of 1-based elements; the bitmask form
(bit ``e - 1`` set for element ``e``) is used where subset and
disjointness tests dominate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

INT64_LIMIT = 2**63


class BudgetExceeded(RuntimeError):
    """An exhaustive routine was asked to do more work than allowed."""


def binom(n: int, r: int) -> int:
    """Exact binomial coefficient, 0 outside 0 <= r <= n.

    Raises OverflowError when the value leaves the signed 64-bit range,
    which is the range every rank and vertex index must fit in.
    """
    if r < 0 or n < 0 or r > n:
        return 0
    value = math.comb(n, r)
    if value >= INT64_LIMIT:
        raise OverflowError(f"C({n},{r}) does not fit in 64 bits")
    return value


@dataclass(frozen=True, order=False)
class KSet:
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        els = self.elements
        if any(e < 1 for e in els):
            raise ValueError(f"elements must be positive: {els}")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError(f"elements must be strictly increasing: {els}")

    @classmethod
    def of(cls, items: Iterable[int]) -> "KSet":
        els = sorted(items)
        if len(set(els)) != len(els):
            raise ValueError(f"repeated element in {els}")
        return cls(tuple(els))

    @classmethod
    def from_mask(cls, mask: int) -> "KSet":
        els = []
        e = 1
        while mask:
            if mask & 1:
                els.append(e)
            mask >>= 1
            e += 1
        return cls(tuple(els))

    @property
    def arity(self) -> int:
        return len(self.elements)

    @property
    def mask(self) -> int:
        m = 0
        for e in self.elements:
            m |= 1 << (e - 1)
        return m

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: object) -> bool:
        return e in self.elements

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _as_kset(x: KSet | Iterable[int]) -> KSet:
    return x if isinstance(x, KSet) else KSet.of(x)


@dataclass(frozen=True)
class SetFamily:
    ground_size: int
    arity: int
    members: frozenset[KSet] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for x in self.members:
            if x.arity != self.arity:
                raise ValueError(f"{x} has arity {x.arity}, family arity is {self.arity}")
            if x.elements and x.elements[-1] > self.ground_size:
                raise ValueError(f"{x} is not inside [{self.ground_size}]")

    @classmethod
    def of(cls, ground_size: int, arity: int, members: Iterable) -> "SetFamily":
        return cls(ground_size, arity, frozenset(_as_kset(m) for m in members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[KSet]:
        return iter(sorted(self.members, key=colex_rank))

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def issubset(self, other: "SetFamily") -> bool:
        return self.members <= other.members


def colex_compare(x: KSet, y: KSet) -> int:
    """Return -1, 0 or 1 as x is before, equal to, or after y in colex order.

    x < y when the largest element of x - y is smaller than the largest
    element of y - x.
    """
    x, y = _as_kset(x), _as_kset(y)
    if x.arity != y.arity:
        raise ValueError(f"arity mismatch: {x.arity} vs {y.arity}")
    xm, ym = x.mask, y.mask
    if xm == ym:
        return 0
    only_x, only_y = xm & ~ym, ym & ~xm
    return -1 if only_x.bit_length() < only_y.bit_length() else 1


def colex_rank(x: KSet) -> int:
    """Position of x among all sets of its arity in colex order (0-based)."""
    x = _as_kset(x)
    return sum(binom(e - 1, i) for i, e in enumerate(x.elements, start=1))


def colex_unrank(r: int, a: int, b: int) -> KSet:
    """Inverse of colex_rank for a-sets over [b]."""
    total = binom(b, a)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} outside [0, C({b},{a})={total})")
    els = []
    top = b
    for i in range(a, 0, -1):
        # largest e with C(e - 1, i) <= r
        e = top
        while binom(e - 1, i) > r:
            e -= 1
        els.append(e)
        r -= binom(e - 1, i)
        top = e - 1
    return KSet(tuple(reversed(els)))


def all_sets(a: int, b: int) -> list[KSet]:
    """Every a-set over [b], in colex order."""
    return [colex_unrank(r, a, b) for r in range(binom(b, a))]


def first_family(m: int, a: int, b: int) -> SetFamily:
    """The m colex-smallest a-sets over [b]."""
    if not 0 <= m <= binom(b, a):
        raise ValueError(f"m={m} outside [0, C({b},{a})]")
    return SetFamily(b, a, frozenset(colex_unrank(r, a, b) for r in range(m)))


def shadow(F: SetFamily, c: int) -> SetFamily:
    """All c-sets contained in some member of F."""
    if c < 0 or c > F.arity:
        raise ValueError(f"shadow level {c} outside [0, {F.arity}]")
    out = set()
    for y in F.members:
        out.update(combinations(y.elements, c))
    return SetFamily(F.ground_size, c, frozenset(KSet(t) for t in out))


def complement_family(F: SetFamily) -> SetFamily:
    b = F.ground_size
    full = (1 << b) - 1
    return SetFamily(b, b - F.arity, frozenset(KSet.from_mask(full & ~x.mask) for x in F.members))


def _check_shadow_params(m: int, a: int, b: int, c: int) -> None:
    if a < 0 or b < 0 or a > b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    if c < 0 or c > a:
        raise ValueError(f"need 0 <= c <= a, got c={c}, a={a}")
    if not 0 <= m <= binom(b, a):
        raise ValueError(f"m={m} outside [0, C({b},{a})]")


def min_shadow_size(m: int, a: int, b: int, c: int) -> int:
    """Size of the c-shadow of the first m a-sets over [b]."""
    _check_shadow_params(m, a, b, c)
    return len(shadow(first_family(m, a, b), c))


def brute_min_shadow(m: int, a: int, b: int, c: int, budget: int = 2_000_000) -> int:
    """Minimum c-shadow size over every family of m a-sets in [b].

    Exhaustive; raises BudgetExceeded instead of sampling when there are
    more than ``budget`` families to try.
    """
    _check_shadow_params(m, a, b, c)
    if m == 0:
        return 0
    universe = list(combinations(range(b), a))
    count = math.comb(len(universe), m)
    if count > budget:
        raise BudgetExceeded(f"C({len(universe)},{m})={count} families exceeds budget {budget}")
    # shadow of each a-set as a bitmask over the c-sets of [b]
    c_index = {t: i for i, t in enumerate(combinations(range(b), c))}
    shadow_mask = [
        sum(1 << c_index[s] for s in combinations(t, c)) for t in universe
    ]
    best = None
    for fam in combinations(shadow_mask, m):
        acc = 0
        for s in fam:
            acc |= s
        size = acc.bit_count()
        if best is None or size < best:
            best = size
    return best
