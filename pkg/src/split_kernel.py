"""Split graph recognition, clique/stable certificates and small forbidden subgraphs.

A graph is split iff it has no induced C4, C5 or 2K2. Recognition follows the
degree-sequence test: sort by non-increasing degree, let m be the largest i
with d_i >= i - 1; the graph is split iff
sum(d_1..d_m) == m(m - 1) + sum(d_{m+1}..d_n), and then the first m vertices
are a clique and the rest a stable set.

The ``*_within`` helpers run on an alive-mask of an ambient graph so solvers
can test residual graphs G - X without building them.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .graph_core import Graph, IndexMap, VertexSet, from_mask, matches_pattern, to_mask

logger = logging.getLogger(__name__)

PATTERNS: Dict[str, Tuple[Tuple[int, int], ...]] = {
    '2K2': ((0, 1), (2, 3)),
    'C4': ((0, 1), (1, 2), (2, 3), (3, 0)),
    'C5': ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)),
}


@dataclass(frozen=True)
class SplitCertificate:
    clique: VertexSet
    stable: VertexSet

    def verify(self, g: Graph, vertices: Optional[VertexSet] = None) -> bool:
        """Check the partition covers ``vertices`` (default: all of g) and both sides are pure."""
        universe = frozenset(range(g.n)) if vertices is None else frozenset(vertices)
        if self.clique & self.stable or (self.clique | self.stable) != universe:
            return False
        rows = g.rows
        k, s = to_mask(self.clique), to_mask(self.stable)
        return (all(not (k & ~rows[v] & ~(1 << v)) for v in self.clique)
                and all(not (s & rows[v]) for v in self.stable))

    def lift(self, index_map: IndexMap) -> 'SplitCertificate':
        back = {new: old for old, new in index_map.items()}
        return SplitCertificate(frozenset(back[v] for v in self.clique), frozenset(back[v] for v in self.stable))


@dataclass(frozen=True)
class SmallObstruction:
    kind: str  # '2K2' | 'C4' | 'C5'
    vertices: Tuple[int, ...]

    def verify(self, g: Graph) -> bool:
        return self.kind in PATTERNS and matches_pattern(g, self.vertices, PATTERNS[self.kind])

    def lift(self, index_map: IndexMap) -> 'SmallObstruction':
        back = {new: old for old, new in index_map.items()}
        return SmallObstruction(self.kind, tuple(back[v] for v in self.vertices))


def _above(v: int) -> int:
    # mask of ids strictly greater than v
    return ~((1 << (v + 1)) - 1)


def split_partition_within(g: Graph, alive: int) -> Optional[Tuple[int, int]]:
    """(clique_mask, stable_mask) of g restricted to ``alive``, or None if that graph is not split."""
    rows = g.rows
    verts = from_mask(alive)
    deg = {v: (rows[v] & alive).bit_count() for v in verts}
    order = sorted(verts, key=lambda v: (-deg[v], v))
    m = 0
    for i, v in enumerate(order):
        if deg[v] < i:
            break
        m = i + 1
    clique = to_mask(order[:m])
    stable = alive & ~clique
    for v in order[:m]:
        if clique & ~rows[v] & ~(1 << v):
            return None
    for v in order[m:]:
        if stable & rows[v]:
            return None
    return clique, stable


def small_obstruction_within(g: Graph, alive: int) -> Optional[SmallObstruction]:
    """Least induced 2K2, then C4, then C5 inside ``alive``; ids are g's ids."""
    rows = g.rows
    verts = from_mask(alive)

    # 2K2: for each edge (a, b) in lexicographic order, look for an edge among the
    # vertices seeing neither a nor b. Pairs whose first edge is smaller were tried earlier.
    for a in verts:
        for b in from_mask(rows[a] & alive & _above(a)):
            rest = alive & ~rows[a] & ~rows[b] & ~(1 << a) & ~(1 << b)
            for c in from_mask(rest):
                nb = rows[c] & rest & _above(c)
                if nb:
                    d = (nb & -nb).bit_length() - 1
                    return SmallObstruction('2K2', (a, b, c, d))

    # C4 a-b-c-d-a with a the smallest vertex and b < d
    for a in verts:
        na = rows[a] & alive & _above(a)
        for b in from_mask(na):
            for d in from_mask(na & _above(b) & ~rows[b]):
                opp = rows[b] & rows[d] & alive & _above(a) & ~rows[a]
                if opp:
                    c = (opp & -opp).bit_length() - 1
                    return SmallObstruction('C4', (a, b, c, d))

    # C5 a-b-c-d-e-a with a the smallest vertex and b < e
    for a in verts:
        na = rows[a] & alive & _above(a)
        far = alive & _above(a) & ~rows[a]
        for b in from_mask(na):
            for e in from_mask(na & _above(b) & ~rows[b]):
                for c in from_mask(rows[b] & far & ~rows[e]):
                    ds = rows[c] & rows[e] & far & ~rows[b]
                    if ds:
                        d = (ds & -ds).bit_length() - 1
                        return SmallObstruction('C5', (a, b, c, d, e))
    return None


def find_split_partition(g: Graph) -> Optional[SplitCertificate]:
    found = split_partition_within(g, g.full_mask)
    if found is None:
        return None
    clique, stable = found
    return SplitCertificate(frozenset(from_mask(clique)), frozenset(from_mask(stable)))


def find_small_obstruction(g: Graph) -> Optional[SmallObstruction]:
    return small_obstruction_within(g, g.full_mask)


def is_split(g: Graph) -> bool:
    return split_partition_within(g, g.full_mask) is not None


def is_split_by_degrees(g: Graph) -> bool:
    """Degree-sequence test alone, without building or checking a partition."""
    d = np.sort(g.degrees())[::-1]
    if d.size == 0:
        return True
    i = np.arange(d.size)
    m = int((d >= i).sum())
    return int(d[:m].sum()) == m * (m - 1) + int(d[m:].sum())
