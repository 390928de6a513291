"""Split Vertex Deletion solvers.

* ``exact_svd``: branch and bound on small obstructions (OPT oracle).
* ``five_approx``: local ratio over induced C4 / C5 / 2K2.
* ``two_plus_eps``: local ratio over induced P_k and co-P_k, then a
  clique-stable set separator of the residual graph; for every cut (A, B)
  cover the non-edges inside A and the edges inside B with the vertex cover
  2-approximation and keep the cheapest cut.

All weights are exact Fractions. Every returned result carries a split
certificate of G - X and the local-ratio layers, from which the original
weights can be rebuilt exactly.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .cs_separator import (DEFAULT_BASE_SIZE, DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_MIN_PAIR_FRACTION,
                           DEFAULT_SEED_LIMIT, Cut, SeparatorFamily, exhaustive_separator,
                           recursive_separator)
from .errors import BudgetExceeded, InstanceTooLarge, NotAHittingSet
from .graph_core import (Graph, Rational, VertexSet, WeightMap, check_vertices, complement, from_mask,
                         induced_subgraph, lift_ids, make_weights, set_weight, to_mask)
from .obstructions import PathObstruction, SearchBudget, choose_k, find_pk_or_copk
from .split_kernel import SmallObstruction, SplitCertificate, small_obstruction_within, split_partition_within
from .vertex_cover import vc_two_approx

logger = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 20
SEPARATOR_STRATEGIES = ('exhaustive', 'recursive')

Obstruction = Union[SmallObstruction, PathObstruction]


@dataclass(frozen=True)
class Layer:
    obstruction: Obstruction
    t: Fraction


@dataclass
class LocalRatioTrace:
    layers: List[Layer] = field(default_factory=list)
    zero_weight_initial: VertexSet = frozenset()
    residual: WeightMap = ()

    def reconstruct(self) -> WeightMap:
        """Residual weights plus every layer's t on its vertices."""
        w = list(self.residual)
        for layer in self.layers:
            for v in layer.obstruction.vertices:
                w[v] += layer.t
        return tuple(w)


@dataclass
class HittingSetResult:
    x: VertexSet
    weight: Fraction
    certificate: SplitCertificate
    trace: LocalRatioTrace
    algorithm: str  # 'exact' | 'five_approx' | 'two_plus_eps'
    k_used: Optional[int] = None
    chosen_cut: Optional[Cut] = None
    family_size: Optional[int] = None


class LocalRatioState:
    """Residual weights and the set of vertices already at weight zero."""

    def __init__(self, g: Graph, w: Sequence[Fraction]):
        self.g = g
        self.residual = list(w)
        zeros = [v for v in range(g.n) if w[v] == 0]
        self.zero_initial = frozenset(zeros)
        self.removed = to_mask(zeros)
        self.layers: List[Layer] = []

    @property
    def alive(self) -> int:
        return self.g.full_mask & ~self.removed

    def apply(self, obstruction: Obstruction) -> Fraction:
        t = min(self.residual[v] for v in obstruction.vertices)
        for v in obstruction.vertices:
            self.residual[v] -= t
            if self.residual[v] == 0:
                self.removed |= 1 << v
        self.layers.append(Layer(obstruction, t))
        return t

    def trace(self) -> LocalRatioTrace:
        return LocalRatioTrace(list(self.layers), self.zero_initial, tuple(self.residual))


def _check_weights(g: Graph, w: Sequence[Rational]) -> WeightMap:
    weights = make_weights(w)
    if len(weights) != g.n:
        raise ValueError(f"expected {g.n} weights, got {len(weights)}")
    return weights


def _small_layers_bound(g: Graph, residual: List[Fraction], alive: int) -> Fraction:
    """Sum of t over small-obstruction layers inside ``alive``; a lower bound on OPT there."""
    alive &= ~to_mask(v for v in from_mask(alive) if residual[v] == 0)
    total = Fraction(0)
    while True:
        ob = small_obstruction_within(g, alive)
        if ob is None:
            return total
        t = min(residual[v] for v in ob.vertices)
        total += t
        for v in ob.vertices:
            residual[v] -= t
            if residual[v] == 0:
                alive &= ~(1 << v)


def local_ratio_lower_bound(g: Graph, w: Sequence[Rational]) -> Fraction:
    weights = _check_weights(g, w)
    return _small_layers_bound(g, list(weights), g.full_mask)


def verify_hitting_set(g: Graph, x) -> SplitCertificate:
    """Split certificate of G - X in g's ids; NotAHittingSet with a witness otherwise."""
    removed = to_mask(check_vertices(g, x))
    alive = g.full_mask & ~removed
    found = split_partition_within(g, alive)
    if found is None:
        raise NotAHittingSet(small_obstruction_within(g, alive))
    clique, stable = found
    return SplitCertificate(frozenset(from_mask(clique)), frozenset(from_mask(stable)))


def prune_minimal(g: Graph, x, w: Sequence[Rational]) -> VertexSet:
    """Drop vertices of X (heaviest first, ties by higher id) while G - X stays split."""
    weights = _check_weights(g, w)
    members = check_vertices(g, x)
    verify_hitting_set(g, members)
    mask = to_mask(members)
    for v in sorted(members, key=lambda v: (-weights[v], -v)):
        trial = mask & ~(1 << v)
        if split_partition_within(g, g.full_mask & ~trial) is not None:
            mask = trial
    return frozenset(from_mask(mask))


def _finish(g: Graph, w: WeightMap, x: VertexSet, trace: LocalRatioTrace, algorithm: str,
            **extra) -> HittingSetResult:
    certificate = verify_hitting_set(g, x)
    return HittingSetResult(x, set_weight(w, x), certificate, trace, algorithm, **extra)


def exact_svd(g: Graph, w: Sequence[Rational], limit: int = DEFAULT_EXACT_LIMIT) -> HittingSetResult:
    """Minimum-weight hitting set by branching on which vertex of a small obstruction to delete.

    Ties: minimum weight, then fewest vertices, then lexicographically least id tuple.
    """
    if g.n > limit:
        raise InstanceTooLarge('exact_svd', g.n, limit)
    weights = _check_weights(g, w)
    start = five_approx(g, weights, prune=True)
    best = [(start.weight, len(start.x), tuple(sorted(start.x)))]
    seen = set()

    def branch(x_mask: int, weight: Fraction):
        if x_mask in seen:
            return
        seen.add(x_mask)
        alive = g.full_mask & ~x_mask
        ob = small_obstruction_within(g, alive)
        if ob is None:
            members = tuple(from_mask(x_mask))
            key = (weight, len(members), members)
            if key < best[0]:
                best[0] = key
            return
        if weight + _small_layers_bound(g, list(weights), alive) > best[0][0]:
            return
        for v in sorted(ob.vertices):
            branch(x_mask | (1 << v), weight + weights[v])

    branch(0, Fraction(0))
    weight, _, members = best[0]
    logger.debug("exact_svd n=%d OPT=%s (%d states)", g.n, weight, len(seen))
    return _finish(g, weights, frozenset(members), LocalRatioTrace(residual=weights), 'exact')


def five_approx(g: Graph, w: Sequence[Rational], prune: bool = False) -> HittingSetResult:
    weights = _check_weights(g, w)
    state = LocalRatioState(g, weights)
    while True:
        ob = small_obstruction_within(g, state.alive)
        if ob is None:
            break
        t = state.apply(ob)
        logger.debug("5-approx layer %s %s t=%s", ob.kind, ob.vertices, t)
    x = frozenset(from_mask(state.removed))
    if prune:
        x = prune_minimal(g, x, weights)
    return _finish(g, weights, x, state.trace(), 'five_approx')


def build_separator(g: Graph, strategy: str, base_size: int = DEFAULT_BASE_SIZE,
                    min_pair_fraction: Rational = DEFAULT_MIN_PAIR_FRACTION,
                    seed_limit: int = DEFAULT_SEED_LIMIT,
                    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> SeparatorFamily:
    if strategy == 'exhaustive':
        return exhaustive_separator(g, exhaustive_limit)
    if strategy == 'recursive':
        return recursive_separator(g, base_size, min_pair_fraction, seed_limit)
    raise ValueError(f"unknown separator strategy {strategy!r}, expected one of {SEPARATOR_STRATEGIES}")


def _cut_cost(residual_graph: Graph, co_residual: Graph, rw: Sequence[Fraction],
              cut: Cut) -> Tuple[Fraction, List[int], List[int]]:
    """Cover non-edges inside A (edges of the complement) and edges inside B."""
    a_graph, a_map = induced_subgraph(co_residual, cut.a)
    a_cover = vc_two_approx(a_graph, [rw[v] for v in sorted(cut.a)])
    b_graph, b_map = induced_subgraph(residual_graph, cut.b)
    b_cover = vc_two_approx(b_graph, [rw[v] for v in sorted(cut.b)])
    return a_cover.weight + b_cover.weight, lift_ids(a_cover.cover, a_map), lift_ids(b_cover.cover, b_map)


def two_plus_eps(g: Graph, w: Sequence[Rational], epsilon: Rational = 1, separator: str = 'exhaustive',
                 budget: Optional[SearchBudget] = None, prune: bool = False, workers: int = 1,
                 base_size: int = DEFAULT_BASE_SIZE,
                 min_pair_fraction: Rational = DEFAULT_MIN_PAIR_FRACTION,
                 seed_limit: int = DEFAULT_SEED_LIMIT,
                 exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> HittingSetResult:
    """Deterministic (2 + eps)-approximation.

    Zero-weight vertices are deleted for free, both up front and whenever a
    layer zeroes them. Each P_k / co-P_k layer costs at most t * k while any
    hitting set pays at least t * (k - 4) / 2 on it; the separator stage is a
    2-approximation on the remaining weights.
    """
    weights = _check_weights(g, w)
    k = choose_k(epsilon)
    if separator not in SEPARATOR_STRATEGIES:
        raise ValueError(f"unknown separator strategy {separator!r}, expected one of {SEPARATOR_STRATEGIES}")
    state = LocalRatioState(g, weights)

    while True:
        alive_ids = from_mask(state.alive)
        if k > len(alive_ids):
            # fewer than k vertices left: nothing to find
            break
        residual_graph, index_map = induced_subgraph(g, alive_ids)
        try:
            witness = find_pk_or_copk(residual_graph, k, budget)
        except BudgetExceeded:
            if split_partition_within(g, state.alive) is not None:
                logger.warning("Path search budget exceeded on a residual that is already split; continuing")
                break
            raise
        if witness is None:
            break
        lifted = witness.lift(index_map)
        t = state.apply(lifted)
        logger.debug("(2+eps) layer %s k=%d t=%s on %s", lifted.kind, k, t, lifted.vertices)

    alive_ids = from_mask(state.alive)
    residual_graph, _ = induced_subgraph(g, alive_ids)
    family = build_separator(residual_graph, separator, base_size, min_pair_fraction, seed_limit,
                             exhaustive_limit)
    co_residual = complement(residual_graph)
    rw = [state.residual[v] for v in alive_ids]

    def evaluate(cut: Cut):
        return _cut_cost(residual_graph, co_residual, rw, cut)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            costs = list(pool.map(evaluate, family.cuts))
    else:
        costs = [evaluate(c) for c in family.cuts]
    best = min(range(len(costs)), key=lambda i: (costs[i][0], i))
    _, x_a, x_b = costs[best]
    chosen = family.cuts[best]
    logger.debug("Best of %d cuts: #%d with residual cost %s", family.size, best, costs[best][0])

    x = frozenset(from_mask(state.removed)) | frozenset(alive_ids[v] for v in x_a + x_b)
    if prune:
        x = prune_minimal(g, x, weights)
    chosen_cut = Cut(frozenset(alive_ids[v] for v in chosen.a), frozenset(alive_ids[v] for v in chosen.b))
    return _finish(g, weights, x, state.trace(), 'two_plus_eps', k_used=k, chosen_cut=chosen_cut,
                   family_size=family.size)
