from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from src.errors import BudgetExceeded
from src.generators import gen_instance
from src.graph_core import Graph, complement, complete_graph, cycle_graph, path_graph, to_networkx
from src.obstructions import PathObstruction, SearchBudget, choose_k, find_induced_path, find_pk_or_copk, ratio_holds


def has_induced_path(g, k):
    return GraphMatcher(to_networkx(g), nx.path_graph(k)).subgraph_is_isomorphic()


def is_induced_path(g, order):
    induced = to_networkx(g).subgraph(order)
    wanted = {frozenset(p) for p in zip(order, order[1:])}
    return len(set(order)) == len(order) and {frozenset(e) for e in induced.edges()} == wanted


@pytest.mark.parametrize('eps, k', [('2', 8), ('1', 12), ('1/2', 20), ('1/4', 36), (100, 5)])
def test_choose_k(eps, k):
    assert choose_k(eps) == k
    assert ratio_holds(k, Fraction(eps))
    if k > 5:
        assert not ratio_holds(k - 1, Fraction(eps))


@pytest.mark.parametrize('eps', [0, -1, '0', '0.5', 0.5])
def test_choose_k_rejects(eps):
    with pytest.raises(ValueError):
        choose_k(eps)


def test_path_found_on_path():
    assert find_induced_path(path_graph(6), 6) == [0, 1, 2, 3, 4, 5]


def test_cycles():
    # C6 has induced P5 but not P6; C7 minus a vertex is P6
    assert find_induced_path(cycle_graph(6), 6) is None
    assert find_induced_path(cycle_graph(6), 5) is not None
    found = find_induced_path(cycle_graph(7), 6)
    assert found is not None and found[0] < found[-1]
    assert is_induced_path(cycle_graph(7), found)


def test_small_orders():
    assert find_induced_path(path_graph(3), 4) is None
    assert find_induced_path(path_graph(3), 1) == [0]
    assert find_induced_path(Graph.from_edges(3, [(1, 2)]), 2) == [1, 2]
    with pytest.raises(ValueError):
        find_induced_path(path_graph(3), 0)


def test_pk_or_copk():
    assert find_pk_or_copk(complete_graph(5), 5) is None
    ob = find_pk_or_copk(path_graph(6), 6)
    assert ob == PathObstruction('Pk', (0, 1, 2, 3, 4, 5), 6)
    co = complement(path_graph(6))
    ob = find_pk_or_copk(co, 6)
    assert ob.kind == 'CoPk' and ob.verify(co)
    assert not PathObstruction('Pk', ob.vertices, 6).verify(co)


def test_obstruction_lift():
    ob = PathObstruction('Pk', (0, 1, 2), 3)
    assert ob.lift({4: 0, 7: 1, 9: 2}).vertices == (4, 7, 9)


def test_budget():
    with pytest.raises(BudgetExceeded) as err:
        find_induced_path(path_graph(6), 6, SearchBudget(1))
    assert err.value.k == 6
    with pytest.raises(ValueError):
        SearchBudget(0)


@pytest.mark.parametrize('k', [3, 4, 5])
def test_agrees_with_brute_force(k):
    rng = np.random.default_rng(k)
    for _ in range(40):
        n = int(rng.integers(k, 8))
        upper = np.triu(rng.random((n, n)) < 0.4, 1)
        g = Graph(upper | upper.T)
        found = find_induced_path(g, k)
        assert (found is not None) == has_induced_path(g, k)
        if found is not None:
            assert is_induced_path(g, found)


def planted(rng, n, k, co):
    upper = np.triu(rng.random((n, n)) < 0.5, 1)
    adj = upper | upper.T
    order = [int(v) for v in rng.choice(n, size=k, replace=False)]
    for i in range(k):
        for j in range(i + 1, k):
            edge = (j == i + 1) != co
            adj[order[i], order[j]] = adj[order[j], order[i]] = edge
    return Graph(adj)


def test_planted_paths_are_found():
    rng = np.random.default_rng(2024)
    for trial in range(200):
        n = int(rng.integers(8, 13))
        k = int(rng.integers(5, 8))
        co = bool(trial % 2)
        g = planted(rng, n, k, co)
        ob = find_pk_or_copk(g, k)
        assert ob is not None and ob.verify(g)
        target = g if ob.kind == 'Pk' else complement(g)
        assert is_induced_path(target, list(ob.vertices))


@pytest.mark.parametrize('seed', range(10))
def test_split_graphs_have_neither(seed):
    inst = gen_instance('planted_split', {'n_clique': 5, 'n_stable': 5}, seed=seed)
    assert find_pk_or_copk(inst.graph, 5) is None


def test_none_is_monotone_in_k():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(5, 10))
        upper = np.triu(rng.random((n, n)) < 0.4, 1)
        g = Graph(upper | upper.T)
        missing = [find_pk_or_copk(g, k) is None for k in range(2, n + 2)]
        first = missing.index(True)
        assert all(missing[first:])


def test_search_skips_mirrored_paths():
    # K4 has no induced P3: three starts (the largest id is never one) with three candidates each
    assert find_induced_path(complete_graph(4), 3, SearchBudget(12)) is None
    with pytest.raises(BudgetExceeded):
        find_induced_path(complete_graph(4), 3, SearchBudget(11))
    # the only P2 on an edge {1, 2} starts at 1
    assert find_induced_path(Graph.from_edges(3, [(1, 2)]), 2, SearchBudget(3)) == [1, 2]
