"""Tree decompositions: data model, validation, normalisation, constructions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, bits, to_mask
from .kneser import KneserGraph, KneserParams, build, star_family
from .setsys import KSet


@dataclass
class TreeDecomposition:
    """Bags indexed by node number 0..len(bags)-1, joined by ``edges``."""

    bags: list[frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def single_bag(cls, vertices) -> "TreeDecomposition":
        return cls([frozenset(vertices)], [])

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    def width(self) -> int:
        if not self.bags:
            raise ValueError("empty decomposition has no width")
        return max(len(b) for b in self.bags) - 1

    def max_bag_size(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for i, j in self.edges:
            nb[i].append(j)
            nb[j].append(i)
        return nb

    def canonical(self) -> tuple:
        """Hashable form; equal for decompositions with identical nodes, bags and edges."""
        return (
            tuple(tuple(sorted(b)) for b in self.bags),
            tuple(sorted(tuple(sorted(e)) for e in self.edges)),
        )


def width(T: TreeDecomposition) -> int:
    return T.width()


@dataclass(frozen=True)
class Violation:
    kind: str  # 'tree', 'range', 'coverage', 'subtree', 'edge'
    detail: str
    vertex: int | None = None
    edge: tuple[int, int] | None = None
    node: int | None = None

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass
class Verdict:
    violations: list[Violation]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def _connected_within(nodes: set[int], nb: list[list[int]]) -> bool:
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def validate(G: Graph, T: TreeDecomposition) -> Verdict:
    """Check T against the tree decomposition axioms for G.

    Every failing vertex, edge or tree node is named in the returned
    verdict; nothing is raised for an invalid decomposition.
    """
    out: list[Violation] = []
    m = T.num_nodes
    if m == 0:
        if G.n:
            out.append(Violation("tree", "decomposition has no nodes"))
        return Verdict(out)

    # tree-ness: m - 1 distinct edges, connected
    seen_edges = set()
    for i, j in T.edges:
        if not (0 <= i < m and 0 <= j < m) or i == j:
            out.append(Violation("tree", f"bad tree edge {i}-{j}", edge=(i, j)))
            continue
        key = (min(i, j), max(i, j))
        if key in seen_edges:
            out.append(Violation("tree", f"duplicate tree edge {i}-{j}", edge=(i, j)))
        seen_edges.add(key)
    nb = T.neighbors() if not out else [[] for _ in range(m)]
    if not out:
        if len(seen_edges) != m - 1 or not _connected_within(set(range(m)), nb):
            out.append(Violation("tree", f"{m} nodes and {len(seen_edges)} edges do not form a tree"))
    if out:
        return Verdict(out)

    occurrences: list[set[int]] = [set() for _ in range(G.n)]
    for x, bag in enumerate(T.bags):
        for v in bag:
            if not 0 <= v < G.n:
                out.append(Violation("range", f"node {x} holds unknown vertex {v}", vertex=v, node=x))
                continue
            occurrences[v].add(x)

    for v, nodes in enumerate(occurrences):
        if not nodes:
            out.append(Violation("coverage", f"vertex {v} is in no bag", vertex=v))
        elif not _connected_within(nodes, nb):
            out.append(Violation("subtree", f"bags holding vertex {v} are not connected", vertex=v))

    for u, v in G.edges():
        if not occurrences[u] & occurrences[v]:
            out.append(Violation("edge", f"edge {u}-{v} is in no bag", edge=(u, v)))
    return Verdict(out)


def normalize(T: TreeDecomposition, G: Graph | None = None) -> TreeDecomposition:
    """Contract tree edges whose bags are nested until no bag is inside a neighbour's.

    When G is given the input is validated first and ValueError raised if invalid.
    """
    if G is not None:
        verdict = validate(G, T)
        if not verdict.valid:
            raise ValueError(f"invalid decomposition: {verdict.violations[0]}")
    bags = {i: b for i, b in enumerate(T.bags)}
    nb: dict[int, set[int]] = {i: set() for i in bags}
    for i, j in T.edges:
        nb[i].add(j)
        nb[j].add(i)

    changed = True
    while changed:
        changed = False
        for i in sorted(bags):
            for j in sorted(nb[i]):
                if bags[i] <= bags[j]:
                    small, big = i, j
                elif bags[j] <= bags[i]:
                    small, big = j, i
                else:
                    continue
                # merge small into big
                for x in nb.pop(small):
                    nb[x].discard(small)
                    if x != big:
                        nb[x].add(big)
                        nb[big].add(x)
                del bags[small]
                changed = True
                break
            if changed:
                break

    order = sorted(bags)
    relabel = {old: new for new, old in enumerate(order)}
    edges = sorted({(min(relabel[i], relabel[j]), max(relabel[i], relabel[j])) for i in nb for j in nb[i]})
    return TreeDecomposition([bags[i] for i in order], edges)


def star_decomposition(H: Graph, independent: set[int] | list[int]) -> TreeDecomposition:
    """Star-shaped decomposition: centre bag V - I, one leaf N[x] per x in I."""
    I = sorted(set(independent))
    if not H.is_independent(to_mask(I)):
        u, v = next((u, v) for u in I for v in I if u < v and H.has_edge(u, v))
        raise ValueError(f"vertices {u} and {v} are adjacent, set is not independent")
    centre = frozenset(set(range(H.n)) - set(I))
    bags = [centre] + [frozenset(bits(H.adj[x])) | {x} for x in I]
    edges = [(0, i) for i in range(1, len(bags))]
    return TreeDecomposition(bags, edges)


def kneser_upper_decomposition(params: KneserParams, G: KneserGraph | None = None) -> TreeDecomposition:
    """Star decomposition of K(n, k) around the star of element 1."""
    if params.k < 2 or params.n < 2 * params.k + 1:
        raise ValueError(f"need k >= 2 and n >= 2k+1, got n={params.n}, k={params.k}")
    G = G if G is not None else build(params)
    return star_decomposition(G, [G.index(s) for s in star_family(1, params)])


def default_w(params: KneserParams) -> list[KSet]:
    """The two-set W = {{2..k+1}, {k+1..2k}}."""
    k = params.k
    return [KSet(tuple(range(2, k + 2))), KSet(tuple(range(k + 1, 2 * k + 1)))]


class WPreconditionError(ValueError):
    def __init__(self, message: str, pair: tuple | None = None, common: KSet | None = None):
        super().__init__(message)
        self.pair = pair
        self.common = common


def check_w(G: KneserGraph, W: list[KSet]) -> None:
    """Raise WPreconditionError unless W is independent, avoids element 1,
    and no two members share a neighbour containing 1."""
    idx = [G.index(w) for w in W]
    if len(set(idx)) != len(idx):
        raise WPreconditionError("W has repeated members")
    for w in W:
        if 1 in w:
            raise WPreconditionError(f"{w} contains 1, so it lies in X")
    X = sum(1 << G.index(s) for s in star_family(1, G.params))
    for a in range(len(W)):
        for b in range(a + 1, len(W)):
            if G.has_edge(idx[a], idx[b]):
                raise WPreconditionError(f"{W[a]} and {W[b]} are adjacent", pair=(W[a], W[b]))
            common = G.adj[idx[a]] & G.adj[idx[b]] & X
            if common:
                c = G.label((common & -common).bit_length() - 1)
                raise WPreconditionError(
                    f"{W[a]} and {W[b]} share the neighbour {c} in X", pair=(W[a], W[b]), common=c
                )


def improved_decomposition(
    params: KneserParams, W: list[KSet] | None = None, G: KneserGraph | None = None
) -> TreeDecomposition:
    """Three-level decomposition built from the star X of element 1 and a set W.

    Root bag V - W - X; below it one node per w in W and per x in X with no
    W-neighbour; below each w one node per x in N(w) & X. A node for x in X
    has bag N[x]; a node for w has bag {w} + {u ~ w : 1 not in u} +
    {u ~ x : x in X, x ~ w}.
    """
    G = G if G is not None else build(params)
    W = default_w(params) if W is None else [w if isinstance(w, KSet) else KSet.of(w) for w in W]
    check_w(G, W)
    X = 0
    for s in star_family(1, params):
        X |= 1 << G.index(s)
    Wm = 0
    for w in W:
        Wm |= 1 << G.index(w)
    adj = G.adj

    bags = [frozenset(bits(G.all_mask & ~Wm & ~X))]
    edges: list[tuple[int, int]] = []

    def closed(v: int) -> frozenset[int]:
        return frozenset(bits(adj[v])) | {v}

    covered = 0
    for w in W:
        wi = G.index(w)
        xs = adj[wi] & X
        bag = (1 << wi) | (adj[wi] & ~X)
        for x in bits(xs):
            bag |= adj[x]
        w_node = len(bags)
        bags.append(frozenset(bits(bag)))
        edges.append((0, w_node))
        for x in bits(xs):
            bags.append(closed(x))
            edges.append((w_node, len(bags) - 1))
        covered |= xs
    for x in bits(X & ~covered):
        bags.append(closed(x))
        edges.append((0, len(bags) - 1))
    return TreeDecomposition(bags, edges)
