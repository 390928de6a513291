"""Clique-stable set separators.

A family of cuts (A, B) separates every disjoint (clique K, stable set S) pair
when some cut has K inside A and S inside B. Two generators are provided:

* ``exhaustive_separator``: all 2^n cuts, only for small n.
* ``recursive_separator``: pure-pair recursion. An anticomplete pair (A, B)
  means no clique meets both sides, so the family of G - A (with A appended to
  every B side) plus the family of G - B (with B appended) is a separator of
  G. A complete pair is the same argument for stable sets, appending to the A
  side. Correctness never depends on the size of the pair found, only the
  family size does.

Families are built on int bitmasks internally and exposed as ``Cut`` objects.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from .errors import InstanceTooLarge
from .graph_core import (Graph, Rational, VertexSet, complement, delete_vertices, from_mask,
                         parse_rational, to_mask, to_networkx)

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_LIMIT = 16
DEFAULT_VERIFY_LIMIT = 12
DEFAULT_BASE_SIZE = 4
DEFAULT_MIN_PAIR_FRACTION = Fraction(1, 10)
DEFAULT_SEED_LIMIT = 64


@dataclass(frozen=True)
class Cut:
    a: VertexSet
    b: VertexSet


@dataclass(frozen=True)
class PurePair:
    a: VertexSet
    b: VertexSet
    kind: str  # 'complete' | 'anticomplete'

    def verify(self, g: Graph) -> bool:
        if not self.a or not self.b or self.a & self.b:
            return False
        want = self.kind == 'complete'
        return all(g.has_edge(u, v) == want for u in self.a for v in self.b)


@dataclass
class SeparatorFamily:
    n: int
    cuts: List[Cut]
    generator: str  # 'exhaustive' | 'recursive' | 'file'
    depth: int = 0
    pair_sizes: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.cuts)

    def stats(self) -> Dict[str, object]:
        return {'size': self.size, 'depth': self.depth, 'pairs': len(self.pair_sizes),
                'smallest_pair_side': min((min(p) for p in self.pair_sizes), default=None)}


@dataclass(frozen=True)
class SeparatorCheck:
    ok: bool
    counterexample: Optional[Tuple[VertexSet, VertexSet]]
    pairs_checked: int


def separates(c: Cut, k, s) -> bool:
    return frozenset(k) <= c.a and frozenset(s) <= c.b


def _family_from_masks(n: int, masks: List[int], generator: str, **extra) -> SeparatorFamily:
    full = (1 << n) - 1
    cuts = [Cut(frozenset(from_mask(a)), frozenset(from_mask(full & ~a))) for a in masks]
    return SeparatorFamily(n, cuts, generator, **extra)


def exhaustive_separator(g: Graph, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> SeparatorFamily:
    if g.n > limit:
        raise InstanceTooLarge('exhaustive_separator', g.n, limit)
    return _family_from_masks(g.n, list(range(1 << g.n)), 'exhaustive')


def _grow_pair(rows: Tuple[int, ...], full: int, u: int, v: int, complete: bool) -> Tuple[int, int]:
    """Greedy growth of a pure pair seeded with ({u}, {v})."""

    def compatible(x: int) -> int:
        # vertices that may sit opposite x
        return rows[x] if complete else full & ~rows[x] & ~(1 << x)

    a, b = 1 << u, 1 << v
    common_a, common_b = compatible(u), compatible(v)
    while True:
        used = a | b
        cand_a = common_b & ~used
        cand_b = common_a & ~used
        # grow the smaller side first, the other one if it is stuck
        if a.bit_count() <= b.bit_count():
            order = (('a', cand_a, cand_b), ('b', cand_b, cand_a))
        else:
            order = (('b', cand_b, cand_a), ('a', cand_a, cand_b))
        for side, cands, opposite in order:
            if cands:
                break
        else:
            return a, b
        # keep as many options open for the opposite side as possible; ties by lower id
        best_x, best_score = -1, -1
        for x in from_mask(cands):
            score = (opposite & compatible(x) & ~(1 << x)).bit_count()
            if score > best_score:
                best_x, best_score = x, score
        if side == 'a':
            a |= 1 << best_x
            common_a &= compatible(best_x)
        else:
            b |= 1 << best_x
            common_b &= compatible(best_x)


def find_pure_pair(g: Graph, min_size: int = 1, seed_limit: int = DEFAULT_SEED_LIMIT) -> PurePair:
    """Heuristic pure pair: grow from up to ``seed_limit`` edges (complete) and as many
    non-edges (anticomplete), keep the pair with the largest smaller side.
    Falls back to the pair ({0}, {1}), which is always pure."""
    if g.n < 2:
        raise ValueError("a pure pair needs at least two vertices")
    rows = g.rows
    full = g.full_mask
    edges = g.edges()[:seed_limit]
    non_edges = complement(g).edges()[:seed_limit]
    best: Optional[Tuple[int, int, str]] = None
    best_score = 0
    for complete, seeds in ((True, edges), (False, non_edges)):
        for u, v in seeds:
            a, b = _grow_pair(rows, full, u, v, complete)
            score = min(a.bit_count(), b.bit_count())
            if score > best_score:
                best, best_score = (a, b, 'complete' if complete else 'anticomplete'), score
            if best_score >= min_size:
                break
        if best_score >= min_size:
            break
    if best is None:
        kind = 'complete' if g.has_edge(0, 1) else 'anticomplete'
        return PurePair(frozenset({0}), frozenset({1}), kind)
    a, b, kind = best
    return PurePair(frozenset(from_mask(a)), frozenset(from_mask(b)), kind)


def recursive_separator(g: Graph, base_size: int = DEFAULT_BASE_SIZE,
                        min_pair_fraction: Rational = DEFAULT_MIN_PAIR_FRACTION,
                        seed_limit: int = DEFAULT_SEED_LIMIT) -> SeparatorFamily:
    if base_size < 1:
        raise ValueError(f"base_size must be >= 1, got {base_size}")
    fraction = parse_rational(min_pair_fraction)
    pair_sizes: List[Tuple[int, int]] = []
    depth_seen = [0]

    def build(h: Graph, depth: int) -> List[int]:
        depth_seen[0] = max(depth_seen[0], depth)
        if h.n <= base_size:
            return list(range(1 << h.n))
        target = max(1, math.ceil(fraction * h.n))
        pair = find_pure_pair(h, target, seed_limit)
        pair_sizes.append((len(pair.a), len(pair.b)))
        out: List[int] = []
        for removed in (pair.a, pair.b):
            sub, index_map = delete_vertices(h, removed)
            back = [0] * sub.n
            for old, new in index_map.items():
                back[new] = old
            removed_mask = to_mask(removed)
            for x in build(sub, depth + 1):
                lifted = 0
                for v in from_mask(x):
                    lifted |= 1 << back[v]
                # anticomplete: removed side joins B, i.e. stays out of A
                if pair.kind == 'complete':
                    lifted |= removed_mask
                out.append(lifted)
        return out

    masks = list(dict.fromkeys(build(g, 0)))
    family = _family_from_masks(g.n, masks, 'recursive', depth=depth_seen[0], pair_sizes=pair_sizes)
    logger.debug("Recursive separator on n=%d: %d cuts, depth %d", g.n, family.size, family.depth)
    return family


def _all_cliques(g: Graph) -> List[int]:
    """Every clique (empty set included) as a mask, in lexicographic order of sorted tuples."""
    found = [tuple(sorted(c)) for c in nx.enumerate_all_cliques(to_networkx(g))]
    return [to_mask(c) for c in sorted([()] + found)]


def verify_separator(g: Graph, f: SeparatorFamily, mode: str = 'exhaustive', count: int = 1000,
                     seed: int = 0, limit: int = DEFAULT_VERIFY_LIMIT) -> SeparatorCheck:
    """Check that every disjoint (clique, stable set) pair is separated by some cut of ``f``.

    ``exhaustive`` enumerates all pairs (n <= limit) and reports the first
    failure in enumeration order; ``sampled`` draws ``count`` random pairs
    from a seeded generator.
    """
    if f.n != g.n:
        raise ValueError(f"family is over {f.n} vertices, graph has {g.n}")
    cut_masks = [(to_mask(c.a), to_mask(c.b)) for c in f.cuts]
    if mode == 'exhaustive':
        if g.n > limit:
            raise InstanceTooLarge('verify_separator', g.n, limit)
        cliques = _all_cliques(g)
        stables = _all_cliques(complement(g))
        checked = 0
        for k in cliques:
            sides = list(dict.fromkeys(b for a, b in cut_masks if k & ~a == 0))
            for s in stables:
                if s & k:
                    continue
                checked += 1
                if not any(s & ~b == 0 for b in sides):
                    return SeparatorCheck(False, (frozenset(from_mask(k)), frozenset(from_mask(s))), checked)
        return SeparatorCheck(True, None, checked)
    if mode == 'sampled':
        rng = np.random.default_rng(seed)
        rows, co_rows = g.rows, complement(g).rows
        for i in range(count):
            order = [int(v) for v in rng.permutation(g.n)]
            k_target, s_target = (int(t) for t in rng.integers(0, g.n + 1, size=2))
            k = 0
            for v in order:
                if k.bit_count() >= k_target:
                    break
                if k & ~rows[v] == 0:
                    k |= 1 << v
            s = 0
            for v in order:
                if s.bit_count() >= s_target:
                    break
                if not (k >> v) & 1 and s & ~co_rows[v] == 0:
                    s |= 1 << v
            if not any(k & ~a == 0 and s & ~b == 0 for a, b in cut_masks):
                return SeparatorCheck(False, (frozenset(from_mask(k)), frozenset(from_mask(s))), i + 1)
        return SeparatorCheck(True, None, count)
    raise ValueError(f"unknown verification mode {mode!r}")
