"""Graph substrate: dense adjacency rows, complements, induced subgraphs and exact weights.

Every other module works on :class:`Graph` (vertex ids ``0..n-1``) and on
``WeightMap`` tuples of :class:`fractions.Fraction`. Search-heavy code reads
``Graph.rows``, the same adjacency as Python int bitmasks.
"""
import logging
import re
from fractions import Fraction
from functools import cached_property
from numbers import Integral
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

VertexSet = FrozenSet[int]
WeightMap = Tuple[Fraction, ...]
IndexMap = Dict[int, int]
Rational = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value: Rational) -> Fraction:
    """Exact rational from an int, a Fraction or a ``num/den`` string. Floats are refused."""
    if isinstance(value, bool):
        raise ValueError(f"expected a rational, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"expected an integer or num/den, got {value!r}")
        return Fraction(text)
    raise ValueError(f"expected an exact rational (int, Fraction or 'num/den'), got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def make_weights(values: Iterable[Rational]) -> WeightMap:
    weights = tuple(parse_rational(v) for v in values)
    for v, wv in enumerate(weights):
        if wv < 0:
            raise ValueError(f"weight of vertex {v} is negative ({wv})")
    return weights


def unit_weights(n: int) -> WeightMap:
    return (Fraction(1),) * n


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Graph:
    """Undirected simple graph over vertex ids 0..n-1.

    The adjacency matrix is copied on construction and frozen, so a Graph can
    be shared freely between threads.
    """

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool)
        if adj.size == 0:
            adj = adj.reshape(0, 0)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be a square matrix, got shape {adj.shape}")
        if adj.diagonal().any():
            loops = [int(v) for v in np.flatnonzero(adj.diagonal())]
            raise ValueError(f"self-loops are not allowed (vertices {loops})")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj.setflags(write=False)
        self._adj = adj

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> 'Graph':
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def m(self) -> int:
        return int(self._adj.sum()) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def rows(self) -> Tuple[int, ...]:
        rows = []
        for row in self._adj:
            mask = 0
            for j in np.flatnonzero(row):
                mask |= 1 << int(j)
            rows.append(mask)
        return tuple(rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1).astype(np.int64)

    def edges(self) -> List[Tuple[int, int]]:
        # np.nonzero walks row-major, so pairs come out in lexicographic order
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def check_vertices(g: Graph, vertices: Iterable[int]) -> VertexSet:
    s = frozenset(vertices)
    for v in s:
        if not isinstance(v, Integral) or not 0 <= v < g.n:
            raise ValueError(f"vertex id {v!r} out of range 0..{g.n - 1}")
    return frozenset(int(v) for v in s)


def complement(g: Graph) -> Graph:
    adj = ~g.adjacency
    np.fill_diagonal(adj, False)
    return Graph(adj)


def to_networkx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> Tuple[Graph, IndexMap]:
    """G[s] with vertices renumbered in increasing old-id order; returns (subgraph, old -> new)."""
    keep = sorted(check_vertices(g, s))
    idx = np.asarray(keep, dtype=np.intp)
    sub = g.adjacency[np.ix_(idx, idx)]
    return Graph(sub), {old: new for new, old in enumerate(keep)}


def delete_vertices(g: Graph, x: Iterable[int]) -> Tuple[Graph, IndexMap]:
    removed = check_vertices(g, x)
    return induced_subgraph(g, (v for v in range(g.n) if v not in removed))


def lift_ids(vertices: Iterable[int], index_map: IndexMap) -> List[int]:
    """Translate ids of an induced subgraph back to the ambient graph."""
    back = {new: old for old, new in index_map.items()}
    return sorted(back[v] for v in vertices)


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    s = check_vertices(g, s)
    mask = to_mask(s)
    rows = g.rows
    return all(not (mask & ~rows[v] & ~(1 << v)) for v in s)


def is_stable(g: Graph, s: Iterable[int]) -> bool:
    s = check_vertices(g, s)
    mask = to_mask(s)
    rows = g.rows
    return all(not (mask & rows[v]) for v in s)


def set_weight(w: Sequence[Fraction], x: Iterable[int]) -> Fraction:
    return sum((w[v] for v in x), Fraction(0))


def matches_pattern(g: Graph, vertices: Sequence[int], pattern_edges: Iterable[Tuple[int, int]]) -> bool:
    """True iff ``vertices`` are distinct and induce exactly ``pattern_edges`` (given by position)."""
    if len(set(vertices)) != len(vertices):
        return False
    if any(not 0 <= v < g.n for v in vertices):
        return False
    wanted = {frozenset(p) for p in pattern_edges}
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            if g.has_edge(vertices[i], vertices[j]) != (frozenset((i, j)) in wanted):
                return False
    return True


def empty_graph(n: int) -> Graph:
    return Graph(np.zeros((n, n), dtype=bool))


def complete_graph(n: int) -> Graph:
    return complement(empty_graph(n))


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {k}")
    return Graph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def two_k2() -> Graph:
    return Graph.from_edges(4, [(0, 1), (2, 3)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """g on ids 0..g.n-1, h shifted after it, no edges between."""
    return Graph(np.block([
        [g.adjacency, np.zeros((g.n, h.n), dtype=bool)],
        [np.zeros((h.n, g.n), dtype=bool), h.adjacency],
    ]))


def join(g: Graph, h: Graph) -> Graph:
    """g on ids 0..g.n-1, h shifted after it, every g-h pair adjacent."""
    return Graph(np.block([
        [g.adjacency, np.ones((g.n, h.n), dtype=bool)],
        [np.ones((h.n, g.n), dtype=bool), h.adjacency],
    ]))
