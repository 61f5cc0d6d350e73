"""Tables of measured treewidths and bounds, computed rather than looked up."""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Iterator, TextIO

from .ekr import hunt_multipartite, split_star_witness
from .exact import DEFAULT_VERTEX_LIMIT, treewidth_bounds, treewidth_exact
from .kneser import KneserParams, build, threshold_check
from .setsys import binom
from .treedec import kneser_upper_decomposition, validate


def k2_formula(n: int) -> int:
    """Closed form for tw(K(n,2)); used only for the comparison column."""
    if n <= 3:
        return 0
    if n == 4:
        return 1
    if n == 5:
        return 4
    return binom(n - 1, 2) - 1


def theorem2_rows(nmax: int, nmin: int = 1, vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> Iterator[dict]:
    for n in range(nmin, nmax + 1):
        G = build(KneserParams(n, 2))
        t0 = time.perf_counter()
        res = treewidth_exact(G, vertex_limit=vertex_limit)
        yield {
            "n": n,
            "vertices": G.n,
            "tw": res.value,
            "formula": k2_formula(n),
            "match": res.value == k2_formula(n),
            "seconds": round(time.perf_counter() - t0, 3),
        }


def theorem1_rows(k: int, nmax: int, nmin: int | None = None) -> Iterator[dict]:
    nmin = 2 * k + 1 if nmin is None else nmin
    for n in range(nmin, nmax + 1):
        params = KneserParams(n, k)
        G = build(params)
        T = kneser_upper_decomposition(params, G)
        if not validate(G, T).valid:
            raise AssertionError(f"construction invalid for K({n},{k})")
        b = treewidth_bounds(G, seed=T)
        yield {
            "n": n,
            "vertices": G.n,
            "lower": b.lower,
            "upper": b.upper,
            "construction": b.seed_upper,
            "formula": binom(n - 1, k) - 1,
            "theorem1_applies": threshold_check(params, Fraction(2, 3)).theorem1_applies,
        }


def theorem3_rows(k: int, nmin: int, nmax: int, p: Fraction, budget: int, seed: int) -> Iterator[dict]:
    for n in range(nmin, nmax + 1):
        params = KneserParams(n, k)
        G = build(params)
        hunt = hunt_multipartite(params, p, budget=budget, seed=seed, G=G)
        seeded = hunt_multipartite(params, p, budget=0, init=split_star_witness(params, p), G=G)
        yield {
            "n": n,
            "p": str(p),
            "in_scope": hunt.in_scope,
            "bound": hunt.bound,
            "hunt_best": hunt.best_size,
            "split_star": seeded.best_size,
            "alarm": hunt.alarm,
        }


def write_table(rows, sink: TextIO, sep: str = "\t") -> int:
    """Write rows as a delimited table with a header; returns the row count."""
    count = 0
    header = None
    for row in rows:
        if header is None:
            header = list(row)
            sink.write(sep.join(header) + "\n")
        sink.write(sep.join(_fmt(row[h]) for h in header) + "\n")
        sink.flush()
        count += 1
    return count


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, tuple):
        return "[" + ",".join(map(str, value)) + "]"
    return str(value)
