import math
import random

import pytest

from kneser_tw.graph import Graph
from kneser_tw.kneser import KneserParams, build, star_family
from kneser_tw.setsys import KSet
from kneser_tw.treedec import (
    TreeDecomposition,
    WPreconditionError,
    default_w,
    improved_decomposition,
    kneser_upper_decomposition,
    normalize,
    star_decomposition,
    validate,
    width,
)
from kneser_tw.ekr import max_independent_set


def td(bags, edges):
    return TreeDecomposition([frozenset(b) for b in bags], list(edges))


def path_decomposition(n):
    return td([(i, i + 1) for i in range(n - 1)], [(i, i + 1) for i in range(n - 2)])


class TestValidate:
    def test_single_bag(self):
        G = build(KneserParams(5, 2))
        T = TreeDecomposition.single_bag(range(G.n))
        assert validate(G, T).valid
        assert width(T) == G.n - 1

    def test_path(self):
        G = Graph.path(5)
        assert validate(G, path_decomposition(5)).valid
        assert width(path_decomposition(5)) == 1

    def test_missing_leaf_names_vertex(self):
        G = Graph.path(4)
        T = path_decomposition(4)  # bags {0,1} {1,2} {2,3}
        broken = td([(0, 1), (1, 2)], [(0, 1)])
        verdict = validate(G, broken)
        assert not verdict.valid
        assert any(v.kind == "coverage" and v.vertex == 3 for v in verdict.violations)
        assert any(v.kind == "edge" and v.edge == (2, 3) for v in verdict.violations)
        assert validate(G, T).valid

    def test_subtree_violation(self):
        G = Graph.path(3)
        T = td([(0, 1), (2,), (1, 2)], [(0, 1), (1, 2)])  # vertex 1 in nodes 0 and 2, not 1
        verdict = validate(G, T)
        assert [v.vertex for v in verdict.violations if v.kind == "subtree"] == [1]

    def test_not_a_tree(self):
        G = Graph.path(3)
        cyc = td([(0, 1), (1, 2), (0, 1, 2)], [(0, 1), (1, 2), (2, 0)])
        assert any(v.kind == "tree" for v in validate(G, cyc).violations)
        forest = td([(0, 1), (1, 2)], [])
        assert any(v.kind == "tree" for v in validate(G, forest).violations)

    def test_unknown_vertex(self):
        G = Graph.path(2)
        assert any(v.kind == "range" for v in validate(G, td([(0, 1, 7)], [])).violations)

    def test_width_of_empty(self):
        with pytest.raises(ValueError):
            TreeDecomposition([], []).width()
        assert width(td([(0, 1, 2)] * 3, [(0, 1), (1, 2)])) == 2


class TestNormalize:
    def test_duplicate_bags_contract(self):
        G = Graph.path(3)
        T = td([(0, 1), (0, 1), (1, 2)], [(0, 1), (1, 2)])
        N = normalize(T, G)
        assert N.num_nodes == 2
        assert validate(G, N).valid

    def test_already_normal(self):
        G = Graph.path(5)
        T = path_decomposition(5)
        assert normalize(T).canonical() == T.canonical()

    def test_nested_chain(self):
        # repeated contraction by hand: B1 <= B2 <= B3 collapses to B3
        G = Graph.complete(3)
        T = td([(0,), (0, 1), (0, 1, 2)], [(0, 1), (1, 2)])
        N = normalize(T, G)
        assert N.bags == [frozenset({0, 1, 2})] and N.edges == []

    def test_rejects_invalid(self):
        with pytest.raises(ValueError):
            normalize(td([(0,)], []), Graph.path(2))

    @pytest.mark.parametrize("seed", range(25))
    def test_random_decompositions(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 9)
        G = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        # a valid but redundant decomposition: elimination bags plus random subset bags
        from kneser_tw.exact import decomposition_from_ordering

        order = list(range(n))
        rng.shuffle(order)
        T = decomposition_from_ordering(G, order)
        bags, edges = list(T.bags), list(T.edges)
        for _ in range(rng.randint(0, 6)):
            host = rng.randrange(len(bags))
            sub = frozenset(v for v in bags[host] if rng.random() < 0.6)
            bags.append(sub)
            edges.append((host, len(bags) - 1))
        T = TreeDecomposition(bags, edges)
        assert validate(G, T).valid
        N = normalize(T, G)
        assert validate(G, N).valid
        assert N.width() <= T.width()
        nb = N.neighbors()
        for x in range(N.num_nodes):
            for y in nb[x]:
                assert not N.bags[x] <= N.bags[y]
        assert normalize(N).canonical() == N.canonical()


class TestStar:
    def test_petersen(self):
        G = build(KneserParams(5, 2))
        I = max_independent_set(G)
        assert len(I) == 4
        T = star_decomposition(G, I)
        assert validate(G, T).valid
        assert T.width() == max(3, 10 - 4 - 1) == 5

    def test_empty_independent_set(self):
        G = build(KneserParams(5, 2))
        T = star_decomposition(G, [])
        assert T.num_nodes == 1 and T.width() == 9

    def test_k62_star(self):
        G = build(KneserParams(6, 2))
        T = star_decomposition(G, [G.index(s) for s in star_family(1, G.params)])
        assert len(T.bags[0]) == 10
        assert all(len(b) == 7 for b in T.bags[1:])
        assert T.width() == 9

    def test_not_independent(self):
        G = Graph.path(3)
        with pytest.raises(ValueError):
            star_decomposition(G, [0, 1])

    def test_bound(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(3, 12)
            G = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
            I = max_independent_set(G)
            T = star_decomposition(G, I)
            assert validate(G, T).valid
            assert T.width() <= max(G.max_degree(), n - len(I) - 1)


UPPER_CASES = [(n, k) for k in (2, 3, 4) for n in range(2 * k + 1, 13)]


@pytest.mark.parametrize("n, k", UPPER_CASES)
def test_upper_construction(n, k):
    params = KneserParams(n, k)
    G = build(params)
    T = kneser_upper_decomposition(params, G)
    assert validate(G, T).valid
    assert T.width() == math.comb(n - 1, k) - 1


def test_upper_examples():
    assert kneser_upper_decomposition(KneserParams(6, 2)).width() == 9
    assert kneser_upper_decomposition(KneserParams(7, 3)).width() == 19
    assert kneser_upper_decomposition(KneserParams(5, 2)).width() == 5
    with pytest.raises(ValueError):
        kneser_upper_decomposition(KneserParams(4, 2))


class TestImproved:
    def test_k73(self):
        params = KneserParams(7, 3)
        G = build(params)
        T = improved_decomposition(params, G=G)
        assert validate(G, T).valid
        assert T.width() < 19
        assert len(T.bags[0]) == math.comb(7, 3) - math.comb(6, 2) - 2 == 18

    def test_k83_precondition(self):
        with pytest.raises(WPreconditionError) as exc:
            improved_decomposition(KneserParams(8, 3))
        assert exc.value.pair == tuple(default_w(KneserParams(8, 3)))
        assert 1 in exc.value.common

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_precondition_iff_small_n(self, k):
        for n in range(2 * k, 2 * k + 8):
            params = KneserParams(n, k)
            if params.num_vertices > 3000:
                break
            G = build(params)
            if n <= 3 * k - 2:
                T = improved_decomposition(params, G=G)
                assert validate(G, T).valid
            else:
                with pytest.raises(WPreconditionError):
                    improved_decomposition(params, G=G)

    def test_custom_w(self):
        params = KneserParams(7, 3)
        G = build(params)
        T = improved_decomposition(params, [KSet.of((2, 3, 4))], G=G)
        assert validate(G, T).valid
        with pytest.raises(WPreconditionError):
            improved_decomposition(params, [KSet.of((1, 2, 3))], G=G)
        with pytest.raises(WPreconditionError):
            improved_decomposition(params, [KSet.of((2, 3, 4)), KSet.of((5, 6, 7))], G=G)
