"""Seeded instance generators for the CLI and the bench runner."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from .graph_core import Graph, WeightMap, cycle_graph, path_graph, parse_rational, two_k2, unit_weights

logger = logging.getLogger(__name__)

GENERATOR_KINDS = ('er', 'planted_split', 'path', 'cycle', 'two_k2')
MIXED_WEIGHTS = (Fraction(1), Fraction(1, 2), Fraction(2), Fraction(3), Fraction(5, 3))
WEIGHT_MODES = ('unit', 'mixed')


@dataclass
class GeneratedInstance:
    graph: Graph
    weights: WeightMap
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def planted(self) -> Optional[List[int]]:
        return self.metadata.get('planted')


def _int_param(params: Dict[str, Any], name: str, default: Optional[int] = None, minimum: int = 0) -> int:
    if name not in params:
        if default is None:
            raise ValueError(f"missing parameter {name!r}")
        return default
    try:
        value = int(params[name])
    except (TypeError, ValueError):
        raise ValueError(f"parameter {name!r} must be an integer, got {params[name]!r}") from None
    if value < minimum:
        raise ValueError(f"parameter {name!r} must be >= {minimum}, got {value}")
    return value


def _probability(params: Dict[str, Any], name: str, default: Optional[str] = None) -> Fraction:
    if name not in params and default is None:
        raise ValueError(f"missing parameter {name!r}")
    p = parse_rational(params.get(name, default))
    if not 0 <= p <= 1:
        raise ValueError(f"parameter {name!r} must lie in [0, 1], got {p}")
    return p


def _coin_matrix(rng: np.random.Generator, n: int, p: Fraction) -> np.ndarray:
    """Symmetric boolean matrix, each pair independently True with probability p (exact)."""
    draws = rng.integers(0, p.denominator, size=(n, n)) < p.numerator
    upper = np.triu(draws, 1)
    return upper | upper.T


def gen_instance(kind: str, params: Optional[Dict[str, Any]] = None, seed: int = 0,
                 weights: str = 'unit') -> GeneratedInstance:
    """Deterministic under (kind, params, seed, weights)."""
    params = dict(params or {})
    if weights not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {weights!r}, expected one of {WEIGHT_MODES}")
    rng = np.random.default_rng(seed)
    planted: Optional[List[int]] = None

    if kind == 'er':
        n = _int_param(params, 'n')
        p = _probability(params, 'p', '1/2')
        graph = Graph(_coin_matrix(rng, n, p))
    elif kind == 'planted_split':
        n_clique = _int_param(params, 'n_clique')
        n_stable = _int_param(params, 'n_stable')
        n_extra = _int_param(params, 'n_extra', 0)
        noise = _probability(params, 'noise', '0')
        cross = _probability(params, 'cross', '1/2')
        n = n_clique + n_stable + n_extra
        adj = np.zeros((n, n), dtype=bool)
        adj[:n_clique, :n_clique] = True
        ks = _coin_matrix(rng, n, cross)
        adj[:n_clique, n_clique:n_clique + n_stable] = ks[:n_clique, n_clique:n_clique + n_stable]
        adj[n_clique:n_clique + n_stable, :n_clique] = ks[n_clique:n_clique + n_stable, :n_clique]
        extra = _coin_matrix(rng, n, noise)
        core = n_clique + n_stable
        adj[core:, :] = extra[core:, :]
        adj[:, core:] = extra[:, core:]
        np.fill_diagonal(adj, False)
        # relabel so the planted structure is not visible in the ids
        perm = rng.permutation(n)
        shuffled = np.zeros_like(adj)
        shuffled[np.ix_(perm, perm)] = adj
        graph = Graph(shuffled)
        # extras left isolated can join the stable side, so only the attached ones are planted
        planted = sorted(int(perm[v]) for v in range(core, n) if adj[v].any())
    elif kind == 'path':
        graph = path_graph(_int_param(params, 'k', minimum=1))
    elif kind == 'cycle':
        graph = cycle_graph(_int_param(params, 'k', minimum=3))
    elif kind == 'two_k2':
        graph = two_k2()
    else:
        raise ValueError(f"unknown generator {kind!r}, expected one of {GENERATOR_KINDS}")

    if weights == 'mixed':
        picks = rng.integers(0, len(MIXED_WEIGHTS), size=graph.n)
        w = tuple(MIXED_WEIGHTS[int(i)] for i in picks)
    else:
        w = unit_weights(graph.n)
    metadata: Dict[str, Any] = {'kind': kind, 'params': params, 'seed': seed, 'weights': weights}
    if planted is not None:
        metadata['planted'] = planted
    logger.debug("Generated %s %s seed=%d: n=%d m=%d", kind, params, seed, graph.n, graph.m)
    return GeneratedInstance(graph, w, metadata)
