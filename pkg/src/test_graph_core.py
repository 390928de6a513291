from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from src.graph_core import (Graph, complement, complete_graph, cycle_graph, delete_vertices, disjoint_union,
                            empty_graph, from_mask, induced_subgraph, is_clique, is_stable, join, lift_ids,
                            make_weights, parse_rational, path_graph, set_weight, to_mask, to_networkx, two_k2)


def random_graph(rng, n, p=0.5):
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


def test_rejects_bad_matrices():
    with pytest.raises(ValueError):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[0, 1, 0], [1, 0, 0]])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])


def test_adjacency_is_frozen_copy():
    adj = np.zeros((3, 3), dtype=bool)
    g = Graph(adj)
    adj[0, 1] = adj[1, 0] = True
    assert g.m == 0
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = True


def test_basic_queries():
    g = Graph.from_edges(4, [(2, 3), (0, 1), (1, 2)])
    assert g.n == 4 and g.m == 3
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert list(g.degrees()) == [1, 2, 2, 1]
    assert g.rows[1] == 0b101
    assert g == path_graph(4)
    assert hash(g) == hash(path_graph(4))
    assert empty_graph(0).n == 0 and empty_graph(0).edges() == []


def test_masks():
    assert to_mask([0, 3]) == 0b1001
    assert from_mask(0b1001) == [0, 3]
    assert from_mask(0) == []


def test_complement_involution_and_edge_count():
    rng = np.random.default_rng(3)
    for n in range(7):
        g = random_graph(rng, n)
        assert complement(complement(g)) == g
        assert g.m + complement(g).m == n * (n - 1) // 2


def test_clique_and_stable():
    c4 = cycle_graph(4)
    assert is_clique(c4, []) and is_stable(c4, [])
    assert is_clique(c4, {0, 1})
    assert is_stable(c4, {0, 2})
    assert not is_clique(c4, {0, 2})
    assert is_clique(complete_graph(5), range(5))
    with pytest.raises(ValueError):
        is_clique(c4, {4})
    with pytest.raises(ValueError):
        is_stable(c4, {-1})


def test_stable_is_clique_of_complement():
    rng = np.random.default_rng(11)
    g = random_graph(rng, 6)
    co = complement(g)
    for r in range(7):
        for s in combinations(range(6), r):
            assert is_stable(g, s) == is_clique(co, s)


def test_induced_subgraph_and_lifting():
    g = cycle_graph(5)
    sub, index_map = induced_subgraph(g, {4, 1, 2})
    assert index_map == {1: 0, 2: 1, 4: 2}
    assert sub.edges() == [(0, 1)]
    assert lift_ids([0, 2], index_map) == [1, 4]


def test_delete_commutes_with_complement():
    rng = np.random.default_rng(5)
    g = random_graph(rng, 7)
    x = {1, 4, 5}
    left, lmap = delete_vertices(complement(g), x)
    right, rmap = delete_vertices(g, x)
    assert lmap == rmap
    assert left == complement(right)


def test_set_weight_additive():
    w = make_weights(['1/2', 3, Fraction(2, 3), '0'])
    assert set_weight(w, []) == 0
    assert set_weight(w, {0, 2}) + set_weight(w, {1, 3}) == set_weight(w, range(4))
    assert set_weight(w, {0, 2}) == Fraction(7, 6)


def test_parse_rational():
    assert parse_rational('3/6') == Fraction(1, 2)
    assert parse_rational(' -2 ') == -2
    assert parse_rational(4) == 4
    for bad in ('0.5', '1e3', 'x', 0.5, True, None):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(ValueError):
        make_weights([1, '-1/2'])


def test_builders():
    assert path_graph(1).m == 0
    assert cycle_graph(3) == complete_graph(3)
    with pytest.raises(ValueError):
        cycle_graph(2)
    assert two_k2() == disjoint_union(path_graph(2), path_graph(2))
    # C4 is the join of two non-edges
    assert join(empty_graph(2), empty_graph(2)) == Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


def test_to_networkx_keeps_isolated_vertices():
    g = Graph.from_edges(5, [(0, 1), (1, 2)])
    nxg = to_networkx(g)
    assert sorted(nxg.nodes()) == [0, 1, 2, 3, 4]
    assert sorted(tuple(sorted(e)) for e in nxg.edges()) == g.edges()
