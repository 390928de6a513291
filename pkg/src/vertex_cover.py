"""Weighted vertex cover: local-ratio 2-approximation and a small exact branch and bound."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import InstanceTooLarge
from .graph_core import Graph, VertexSet, from_mask, set_weight, to_mask

logger = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 24


@dataclass(frozen=True)
class CoverResult:
    cover: VertexSet
    weight: Fraction
    method: str  # 'two_approx' | 'exact'


def is_vertex_cover(g: Graph, cover) -> bool:
    c = to_mask(cover)
    return all((1 << u) & c or (1 << v) & c for u, v in g.edges())


def _local_ratio_pass(g: Graph, residual: List[Fraction], alive: int) -> Fraction:
    """Edge-by-edge local ratio on the edges inside ``alive``; mutates ``residual``, returns the sum of t."""
    total = Fraction(0)
    rows = g.rows
    for u in from_mask(alive):
        for v in from_mask(rows[u] & alive & ~((1 << (u + 1)) - 1)):
            t = min(residual[u], residual[v])
            if t > 0:
                residual[u] -= t
                residual[v] -= t
                total += t
    return total


def vc_two_approx(g: Graph, w: Sequence[Fraction]) -> CoverResult:
    """Local ratio over edges in lexicographic order, then reverse-delete pruning.

    Pruning visits cover vertices by decreasing original weight (ties: higher
    id first) and drops any vertex whose neighbours are all still in the cover.
    """
    residual = list(w)
    _local_ratio_pass(g, residual, g.full_mask)
    rows = g.rows
    cover = to_mask(v for v in range(g.n) if residual[v] == 0)
    for v in sorted(from_mask(cover), key=lambda v: (-w[v], -v)):
        if not (rows[v] & ~cover):
            cover &= ~(1 << v)
    chosen = frozenset(from_mask(cover))
    return CoverResult(chosen, set_weight(w, chosen), 'two_approx')


def vc_exact(g: Graph, w: Sequence[Fraction], limit: int = DEFAULT_EXACT_LIMIT) -> CoverResult:
    """Minimum-weight vertex cover by branching on a maximum-degree vertex.

    Ties: minimum weight, then fewest vertices, then lexicographically least id tuple.
    """
    if g.n > limit:
        raise InstanceTooLarge('vc_exact', g.n, limit)
    rows = g.rows
    start = vc_two_approx(g, w)
    best: List[Tuple[Fraction, int, Tuple[int, ...]]] = [
        (start.weight, len(start.cover), tuple(sorted(start.cover)))]

    def key_of(mask: int) -> Tuple[Fraction, int, Tuple[int, ...]]:
        members = from_mask(mask)
        return set_weight(w, members), len(members), tuple(members)

    def branch(alive: int, cover: int, weight: Fraction):
        # edges left among alive vertices
        pick, pick_deg = -1, 0
        for v in from_mask(alive):
            d = (rows[v] & alive).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick < 0:
            key = key_of(cover)
            if key < best[0]:
                best[0] = key
            return
        residual = list(w)
        if weight + _local_ratio_pass(g, residual, alive) > best[0][0]:
            return
        # pick in the cover
        branch(alive & ~(1 << pick), cover | (1 << pick), weight + w[pick])
        # pick out of the cover: all its remaining neighbours are in
        nbrs = rows[pick] & alive
        branch(alive & ~nbrs & ~(1 << pick), cover | nbrs, weight + set_weight(w, from_mask(nbrs)))

    branch(g.full_mask, 0, Fraction(0))
    weight, _, members = best[0]
    logger.debug("vc_exact n=%d weight=%s (2-approx start %s)", g.n, weight, start.weight)
    return CoverResult(frozenset(members), weight, 'exact')
