"""Induced P_k / co-P_k search and the choice of k for a target ratio 2 + eps."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import BudgetExceeded
from .graph_core import Graph, IndexMap, Rational, complement, from_mask, matches_pattern, parse_rational

logger = logging.getLogger(__name__)

DEFAULT_MAX_NODES = 10 ** 7


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError(f"search budget must allow at least one node, got {self.max_nodes}")


def path_pattern(k: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, i + 1) for i in range(k - 1))


@dataclass(frozen=True)
class PathObstruction:
    kind: str  # 'Pk' | 'CoPk'
    vertices: Tuple[int, ...]
    k: int

    def verify(self, g: Graph) -> bool:
        if len(self.vertices) != self.k or self.kind not in ('Pk', 'CoPk'):
            return False
        target = g if self.kind == 'Pk' else complement(g)
        return matches_pattern(target, self.vertices, path_pattern(self.k))

    def lift(self, index_map: IndexMap) -> 'PathObstruction':
        back = {new: old for old, new in index_map.items()}
        return PathObstruction(self.kind, tuple(back[v] for v in self.vertices), self.k)


def ratio_holds(k: int, epsilon: Fraction) -> bool:
    """2k / (k - 4) <= 2 + eps, exactly."""
    return k > 4 and Fraction(2 * k, k - 4) <= 2 + epsilon


def choose_k(epsilon: Rational) -> int:
    """Smallest k >= 5 with 2k/(k-4) <= 2 + eps, i.e. k >= 4 + 8/eps."""
    eps = parse_rational(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {eps}")
    k = max(5, math.ceil(4 + 8 / eps))
    while not ratio_holds(k, eps):
        k += 1
    while k > 5 and ratio_holds(k - 1, eps):
        k -= 1
    return k


def _reaches(rows: Tuple[int, ...], start: int, free: int, need: int, target: int) -> bool:
    """At least ``need`` vertices of ``free``, one of them in ``target``, are reachable from ``start`` through ``free``."""
    seen = 0
    frontier = rows[start] & free
    while frontier:
        seen |= frontier
        if seen.bit_count() >= need and seen & target:
            return True
        nxt = 0
        for v in from_mask(frontier):
            nxt |= rows[v]
        frontier = nxt & free & ~seen
    return False


def find_induced_path(g: Graph, k: int, budget: Optional[SearchBudget] = None) -> Optional[List[int]]:
    """Depth-first search for an induced path on k vertices.

    Returns the path (first endpoint smaller than the last) or None once the
    search tree is exhausted. Raises BudgetExceeded when more than
    ``budget.max_nodes`` tree nodes are expanded; None is only returned on a
    completed search.
    """
    if k < 1:
        raise ValueError(f"path order must be >= 1, got {k}")
    budget = budget or SearchBudget()
    n = g.n
    if k > n:
        return None
    if k == 1:
        return [0]
    rows = g.rows
    full = g.full_mask
    nodes = 0

    def dfs(path: List[int], closed: int) -> Optional[List[int]]:
        nonlocal nodes
        if len(path) == k:
            return list(path)
        tail = path[-1]
        need = k - len(path)
        # the far endpoint must end up above the start
        above = full & ~((1 << (path[0] + 1)) - 1)
        candidates = rows[tail] & full & ~closed
        if need == 1:
            candidates &= above
        for c in from_mask(candidates):
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceeded(budget.max_nodes, nodes, k)
            # c becomes the tail; the old tail's other neighbours can no longer be used
            new_closed = closed | rows[tail] | (1 << c)
            if need > 1 and not _reaches(rows, c, full & ~new_closed, need - 1, above):
                continue
            path.append(c)
            found = dfs(path, new_closed)
            if found is not None:
                return found
            path.pop()
        return None

    # the largest id can never be the smaller endpoint
    for s in range(n - 1):
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetExceeded(budget.max_nodes, nodes, k)
        found = dfs([s], 1 << s)
        if found is not None:
            if not matches_pattern(g, found, path_pattern(k)):
                raise RuntimeError(f"induced path search returned a non-path {found}")
            logger.debug("Induced P%d found after %d nodes: %s", k, nodes, found)
            return found
    logger.debug("No induced P%d (%d nodes searched)", k, nodes)
    return None


def find_pk_or_copk(g: Graph, k: int, budget: Optional[SearchBudget] = None) -> Optional[PathObstruction]:
    path = find_induced_path(g, k, budget)
    if path is not None:
        return PathObstruction('Pk', tuple(path), k)
    path = find_induced_path(complement(g), k, budget)
    if path is not None:
        return PathObstruction('CoPk', tuple(path), k)
    return None
