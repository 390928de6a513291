from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import numpy as np
import pytest

from src.cs_separator import (Cut, PurePair, SeparatorFamily, exhaustive_separator, find_pure_pair,
                              recursive_separator, separates, verify_separator)
from src.errors import InstanceTooLarge
from src.graph_core import Graph, complement, cycle_graph, delete_vertices, empty_graph, join, path_graph, to_networkx


def random_graph(rng, n, p=0.5):
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


def separates_all_brute(g, family):
    """Independent check over every disjoint (clique, stable set) pair."""
    graph = to_networkx(g)
    subsets = [frozenset(c) for r in range(g.n + 1) for c in combinations(range(g.n), r)]
    cliques = [s for s in subsets if len(s) < 2 or nx.density(graph.subgraph(s)) == 1]
    stables = [s for s in subsets if graph.subgraph(s).number_of_edges() == 0]
    return all(any(separates(c, k, s) for c in family.cuts)
               for k in cliques for s in stables if not k & s)


def test_separates():
    cut = Cut(frozenset({0, 1}), frozenset({2, 3}))
    assert separates(cut, {0}, {2, 3})
    assert separates(cut, set(), set())
    assert not separates(cut, {0, 2}, set())


def test_exhaustive_family():
    f = exhaustive_separator(path_graph(4))
    assert f.size == 16 and f.generator == 'exhaustive'
    assert verify_separator(path_graph(4), f).ok
    single = exhaustive_separator(empty_graph(1))
    assert set(single.cuts) == {Cut(frozenset({0}), frozenset()), Cut(frozenset(), frozenset({0}))}
    with pytest.raises(InstanceTooLarge):
        exhaustive_separator(empty_graph(5), limit=4)


def test_pure_pairs_are_pure():
    rng = np.random.default_rng(1)
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(2, 14)))
        pair = find_pure_pair(g)
        assert pair.verify(g)
    assert find_pure_pair(empty_graph(2)) == PurePair(frozenset({0}), frozenset({1}), 'anticomplete')
    with pytest.raises(ValueError):
        find_pure_pair(empty_graph(1))


def test_pure_pair_on_complete_bipartite():
    # every edge seed grows into the full bipartition
    g = complement(Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]))
    pair = find_pure_pair(g, min_size=3)
    assert pair.kind == 'complete'
    assert {pair.a, pair.b} == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}


def test_recursive_small_equals_exhaustive():
    g = cycle_graph(4)
    assert recursive_separator(g, base_size=4).cuts == exhaustive_separator(g).cuts


def test_recursive_is_valid():
    rng = np.random.default_rng(2)
    for _ in range(12):
        g = random_graph(rng, int(rng.integers(5, 10)), p=float(rng.choice([0.2, 0.5, 0.8])))
        f = recursive_separator(g, base_size=3)
        assert f.generator == 'recursive'
        assert len(set(f.cuts)) == f.size
        assert all(c.a | c.b == frozenset(range(g.n)) and not c.a & c.b for c in f.cuts)
        assert verify_separator(g, f).ok
        assert f.stats()['size'] == f.size


def test_lifting_through_anticomplete_pair():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    pair = PurePair(frozenset({0, 1, 2}), frozenset({3, 4, 5}), 'anticomplete')
    assert pair.verify(g)
    cuts = []
    for removed in (pair.a, pair.b):
        sub, index_map = delete_vertices(g, removed)
        back = {new: old for old, new in index_map.items()}
        for c in exhaustive_separator(sub).cuts:
            cuts.append(Cut(frozenset(back[v] for v in c.a), frozenset(back[v] for v in c.b) | removed))
    assert separates_all_brute(g, SeparatorFamily(6, cuts, 'test'))


def test_verify_reports_first_failure():
    g = empty_graph(3)
    f = SeparatorFamily(3, [Cut(frozenset(range(3)), frozenset())], 'file')
    check = verify_separator(g, f)
    assert not check.ok
    assert check.counterexample == (frozenset(), frozenset({0}))
    assert check.pairs_checked == 2


def test_verify_sampled():
    g = empty_graph(5)
    assert verify_separator(g, exhaustive_separator(g), mode='sampled', count=200, seed=3).ok
    f = SeparatorFamily(5, [Cut(frozenset(range(5)), frozenset())], 'file')
    check = verify_separator(g, f, mode='sampled', count=200, seed=3)
    assert not check.ok
    k, s = check.counterexample
    assert s and not k & s


def test_verify_guards():
    g = empty_graph(4)
    f = exhaustive_separator(g)
    with pytest.raises(InstanceTooLarge):
        verify_separator(g, f, limit=3)
    with pytest.raises(ValueError):
        verify_separator(empty_graph(3), f)
    with pytest.raises(ValueError):
        verify_separator(g, f, mode='random')


def test_verify_agrees_with_brute_force():
    rng = np.random.default_rng(4)
    for _ in range(10):
        g = random_graph(rng, 6)
        full = exhaustive_separator(g)
        # drop every other cut so some families fail
        half = SeparatorFamily(6, full.cuts[::2], 'file')
        for f in (full, half):
            assert verify_separator(g, f).ok == separates_all_brute(g, f)


@pytest.mark.slow
def test_recursive_valid_on_larger_graphs():
    rng = np.random.default_rng(9)
    for _ in range(20):
        g = random_graph(rng, 12, p=float(rng.choice([0.3, 0.5, 0.7])))
        assert verify_separator(g, recursive_separator(g), limit=12).ok


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for bits in product((0, 1), repeat=len(pairs)):
        yield Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


@pytest.mark.parametrize('g, base_size, fraction', [
    (empty_graph(8), 4, '1/10'),
    (join(cycle_graph(5), cycle_graph(5)), 4, '1/10'),
    (path_graph(4), 2, '1/4'),
])
def test_recursive_known_graphs(g, base_size, fraction):
    f = recursive_separator(g, base_size=base_size, min_pair_fraction=fraction)
    assert verify_separator(g, f).ok


@pytest.mark.parametrize('n', range(1, 6))
def test_recursive_all_graphs_up_to_five(n):
    for g in all_graphs(n):
        for base_size in (1, 2, 4):
            assert verify_separator(g, recursive_separator(g, base_size=base_size)).ok


@pytest.mark.slow
def test_recursive_all_graphs_on_six():
    for g in all_graphs(6):
        for base_size in (1, 2, 4):
            assert verify_separator(g, recursive_separator(g, base_size=base_size)).ok


def test_recursive_random_mid_size():
    rng = np.random.default_rng(77)
    for _ in range(100):
        n = int(rng.integers(7, 11))
        g = random_graph(rng, n, p=float(rng.choice([0.2, 0.5, 0.8])))
        f = recursive_separator(g, base_size=int(rng.choice([2, 4])))
        assert verify_separator(g, f).ok
