import io

import pytest

from kneser_tw.exact import treewidth_exact
from kneser_tw.formats import FormatError, read_gr, read_td, read_witness, write_gr, write_td, write_witness
from kneser_tw.graph import Graph
from kneser_tw.kneser import KneserParams, build
from kneser_tw.setsys import KSet
from kneser_tw.treedec import improved_decomposition, kneser_upper_decomposition


def test_gr_layout():
    buf = io.StringIO()
    write_gr(build(KneserParams(4, 2)), buf, comments=["K(4,2)"])
    assert buf.getvalue() == "c K(4,2)\np tw 6 3\n1 6\n2 5\n3 4\n"


def test_gr_colex_ids():
    # vertex 1 is {1,2}; its neighbours in K(5,2) are {3,4},{3,5},{4,5}, ranks 5,8,9 -> ids 6,9,10
    buf = io.StringIO()
    write_gr(build(KneserParams(5, 2)), buf)
    lines = buf.getvalue().splitlines()
    assert [l for l in lines if l.startswith("1 ")] == ["1 6", "1 9", "1 10"]


@pytest.mark.parametrize(
    "text",
    [
        "1 2\n",
        "p tw 3 1\n1 4\n",
        "p tw 3 2\n1 2\n",
        "p td 3 0\n",
        "p tw 3 1\n1 1\n",
    ],
)
def test_gr_errors(text):
    with pytest.raises(FormatError):
        read_gr(io.StringIO(text))


def test_gr_comments_and_blank_lines():
    G = read_gr(io.StringIO("c hello\n\np tw 3 2\nc mid\n1 2\n2 3\n"))
    assert G == Graph.path(3)


@pytest.mark.parametrize("n, k, kind", [(6, 2, "upper"), (7, 3, "improved"), (6, 2, "exact")])
def test_td_round_trip(n, k, kind):
    params = KneserParams(n, k)
    G = build(params)
    if kind == "upper":
        T = kneser_upper_decomposition(params, G)
    elif kind == "improved":
        T = improved_decomposition(params, G=G)
    else:
        T = treewidth_exact(G).witness
    buf = io.StringIO()
    write_td(T, G.n, buf)
    header = buf.getvalue().splitlines()[0]
    assert header == f"s td {T.num_nodes} {T.width() + 1} {G.n}"
    buf.seek(0)
    back, nv = read_td(buf)
    assert nv == G.n
    assert back.canonical() == T.canonical()


def test_td_layout():
    from kneser_tw.treedec import TreeDecomposition

    T = TreeDecomposition([frozenset({0, 1}), frozenset({1, 2})], [(0, 1)])
    buf = io.StringIO()
    write_td(T, 3, buf)
    assert buf.getvalue() == "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"


@pytest.mark.parametrize(
    "text",
    [
        "b 1 1 2\n",
        "s td 2 2 3\nb 1 1 2\n",
        "s td 1 3 3\nb 1 1 2\n",
        "s td 1 2 3\nb 2 1 2\n",
        "s td 1 2 3\nb 1 1 2\n1 2 3\n",
    ],
)
def test_td_errors(text):
    with pytest.raises(FormatError):
        read_td(io.StringIO(text))


def test_witness_round_trip():
    classes = [[KSet.of((1, 2)), KSet.of((1, 3))], [KSet.of((1, 4))]]
    buf = io.StringIO()
    write_witness(classes, buf)
    assert buf.getvalue() == "1,2;1,3\n1,4\n"
    buf.seek(0)
    assert read_witness(buf) == classes


def test_witness_errors():
    with pytest.raises(FormatError):
        read_witness(io.StringIO("1,x\n"))
    with pytest.raises(FormatError):
        read_witness(io.StringIO("1,1\n"))
