import pytest

from src.generators import MIXED_WEIGHTS, gen_instance
from src.graph_core import complete_graph, cycle_graph, empty_graph, path_graph, set_weight, two_k2
from src.split_kernel import is_split
from src.svd_solver import exact_svd, verify_hitting_set


def test_deterministic_under_seed():
    a = gen_instance('er', {'n': 12, 'p': '1/3'}, seed=4, weights='mixed')
    b = gen_instance('er', {'n': 12, 'p': '1/3'}, seed=4, weights='mixed')
    c = gen_instance('er', {'n': 12, 'p': '1/3'}, seed=5, weights='mixed')
    assert a.graph == b.graph and a.weights == b.weights
    assert (a.graph, a.weights) != (c.graph, c.weights)
    assert set(a.weights) <= set(MIXED_WEIGHTS)
    assert a.metadata == {'kind': 'er', 'params': {'n': 12, 'p': '1/3'}, 'seed': 4, 'weights': 'mixed'}


def test_er_extremes():
    assert gen_instance('er', {'n': 6, 'p': '0'}).graph == empty_graph(6)
    assert gen_instance('er', {'n': 6, 'p': 1}).graph == complete_graph(6)
    assert gen_instance('er', {'n': 0}).graph.n == 0


def test_fixed_shapes():
    assert gen_instance('path', {'k': 5}).graph == path_graph(5)
    assert gen_instance('cycle', {'k': '6'}).graph == cycle_graph(6)
    assert gen_instance('two_k2').graph == two_k2()
    assert gen_instance('two_k2').weights == (1, 1, 1, 1)


def test_planted_split_is_an_upper_bound():
    for seed in range(8):
        inst = gen_instance('planted_split', {'n_clique': 4, 'n_stable': 4, 'n_extra': 3, 'noise': '1/2'},
                            seed=seed, weights='mixed')
        assert inst.graph.n == 11
        verify_hitting_set(inst.graph, inst.planted)
        assert exact_svd(inst.graph, inst.weights).weight <= set_weight(inst.weights, inst.planted)


def test_planted_split_without_noise_is_split():
    inst = gen_instance('planted_split', {'n_clique': 5, 'n_stable': 5, 'n_extra': 2}, seed=1)
    assert inst.planted == []
    assert is_split(inst.graph)


@pytest.mark.parametrize('kind, params, weights', [
    ('grid', {}, 'unit'),
    ('er', {}, 'unit'),
    ('er', {'n': 4, 'p': '3/2'}, 'unit'),
    ('er', {'n': 4, 'p': '0.5'}, 'unit'),
    ('er', {'n': 'four'}, 'unit'),
    ('cycle', {'k': 2}, 'unit'),
    ('path', {'k': 3}, 'heavy'),
    ('planted_split', {'n_clique': 3}, 'unit'),
])
def test_rejects_bad_parameters(kind, params, weights):
    with pytest.raises(ValueError):
        gen_instance(kind, params, weights=weights)
