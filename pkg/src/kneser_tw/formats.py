"""PACE graph (.gr) and tree decomposition (.td) files, and witness text.

.gr:  ``p tw <vertices> <edges>`` then one ``u v`` line per edge.
.td:  ``s td <bags> <max bag size> <vertices>``, ``b <id> v1 v2 ...`` lines,
      then one ``i j`` line per tree edge.
All vertex and bag ids in files are 1-based; ``c`` lines are comments.
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .graph import Graph
from .setsys import KSet
from .treedec import TreeDecomposition


class FormatError(ValueError):
    pass


def _content_lines(source: TextIO) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(source, 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def write_gr(G: Graph, sink: TextIO, comments: Iterable[str] = ()) -> None:
    for c in comments:
        sink.write(f"c {c}\n")
    sink.write(f"p tw {G.n} {G.num_edges()}\n")
    for u, v in G.edges():
        sink.write(f"{u + 1} {v + 1}\n")


def read_gr(source: TextIO) -> Graph:
    G = None
    declared_edges = 0
    seen = 0
    for lineno, parts in _content_lines(source):
        if parts[0] == "p":
            if G is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(f"line {lineno}: expected 'p tw <n> <m>'")
            G = Graph(int(parts[2]))
            declared_edges = int(parts[3])
            continue
        if G is None:
            raise FormatError(f"line {lineno}: edge before header")
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<u> <v>'")
        u, v = int(parts[0]) - 1, int(parts[1]) - 1
        try:
            G.add_edge(u, v)
        except ValueError as e:
            raise FormatError(f"line {lineno}: {e}") from None
        seen += 1
    if G is None:
        raise FormatError("missing 'p tw' header")
    if seen != declared_edges:
        raise FormatError(f"header declares {declared_edges} edges, found {seen}")
    return G


def write_td(T: TreeDecomposition, num_vertices: int, sink: TextIO, comments: Iterable[str] = ()) -> None:
    for c in comments:
        sink.write(f"c {c}\n")
    sink.write(f"s td {T.num_nodes} {T.max_bag_size()} {num_vertices}\n")
    for i, bag in enumerate(T.bags, 1):
        sink.write(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]) + "\n")
    for i, j in T.edges:
        sink.write(f"{i + 1} {j + 1}\n")


def read_td(source: TextIO) -> tuple[TreeDecomposition, int]:
    """Parse a .td file; returns the decomposition and the declared vertex count."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, parts in _content_lines(source):
        if parts[0] == "s":
            if header is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {lineno}: expected 's td <bags> <max> <n>'")
            header = tuple(int(x) for x in parts[2:])
        elif header is None:
            raise FormatError(f"line {lineno}: content before header")
        elif parts[0] == "b":
            bag_id = int(parts[1])
            if not 1 <= bag_id <= header[0] or bag_id in bags:
                raise FormatError(f"line {lineno}: bad or repeated bag id {bag_id}")
            bags[bag_id] = frozenset(int(v) - 1 for v in parts[2:])
        elif len(parts) == 2:
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        else:
            raise FormatError(f"line {lineno}: unrecognised line")
    if header is None:
        raise FormatError("missing 's td' header")
    num_bags, max_size, nv = header
    if len(bags) != num_bags:
        raise FormatError(f"header declares {num_bags} bags, found {len(bags)}")
    T = TreeDecomposition([bags[i] for i in range(1, num_bags + 1)], edges)
    if T.max_bag_size() != max_size:
        raise FormatError(f"header declares max bag size {max_size}, found {T.max_bag_size()}")
    return T, nv


# Witness text: one colour class per line; vertices in a class separated by
# ';', elements of a vertex by ','.  Example line: ``1,2;1,3;1,4``.

def write_witness(classes: list[list[KSet]], sink: TextIO) -> None:
    for cls in classes:
        sink.write(";".join(",".join(map(str, v.elements)) for v in cls) + "\n")


def read_witness(source: TextIO) -> list[list[KSet]]:
    classes = []
    for lineno, raw in enumerate(source, 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        try:
            classes.append([KSet.of(int(e) for e in item.split(",")) for item in line.split(";") if item.strip()])
        except ValueError as e:
            raise FormatError(f"line {lineno}: {e}") from None
    return classes
