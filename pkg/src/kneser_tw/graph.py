"""Simple undirected graphs on vertices 0..n-1 with bitset adjacency."""

from __future__ import annotations

from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Undirected simple graph; ``adj[v]`` is the neighbourhood bitmask of v."""

    def __init__(self, n: int, adj: list[int] | None = None):
        self.n = n
        self.adj = list(adj) if adj is not None else [0] * n
        if len(self.adj) != n:
            raise ValueError("adjacency list length does not match vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge {u}-{v} outside vertex range 0..{self.n - 1}")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u

    def remove_edge(self, u: int, v: int) -> None:
        self.adj[u] &= ~(1 << v)
        self.adj[v] &= ~(1 << u)

    def copy(self) -> "Graph":
        return Graph(self.n, self.adj)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((a.bit_count() for a in self.adj), default=0)

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield u, v

    def neighborhood(self, mask: int) -> int:
        """Union of the neighbourhoods of the vertices in mask."""
        out = 0
        adj = self.adj
        for v in bits(mask):
            out |= adj[v]
        return out

    def is_independent(self, mask: int) -> bool:
        return not any(self.adj[v] & mask for v in bits(mask))

    def component_of(self, v: int, within: int) -> int:
        """Vertex mask of the component of v in the subgraph induced by ``within``."""
        adj = self.adj
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= adj[u]
            frontier = nxt & within & ~comp
            comp |= frontier
        return comp

    def components(self, within: int | None = None) -> list[int]:
        """Component masks of the subgraph induced by ``within`` (default: all)."""
        rest = self.all_mask if within is None else within
        out = []
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = self.component_of(v, rest)
            out.append(comp)
            rest &= ~comp
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"
