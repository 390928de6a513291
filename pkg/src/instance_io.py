"""Text formats for instances and separator families.

Instance files are DIMACS-like, one record per line, 1-based vertex ids::

    c any comment
    p svd <n> <m>
    w <vertex> <rational>      # optional, default weight 1
    e <u> <v>

Rationals are written as integers or ``num/den``; decimals are refused so
weights stay exact. Separator families are one cut per line::

    A: 1 3 | B: 2 4
"""
import logging
import os
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cs_separator import Cut, SeparatorFamily
from .errors import InstanceParseError
from .graph_core import Graph, WeightMap, format_rational, parse_rational

logger = logging.getLogger(__name__)


_INT_RE = re.compile(r"^[0-9]+$")


def _parse_int(token: str, line_no: int, what: str) -> int:
    # plain ASCII digits only; int() would also take "1_0" or full-width digits
    if not _INT_RE.match(token):
        raise InstanceParseError(line_no, f"{what} must be a non-negative integer, got {token!r}")
    return int(token)


def _parse_vertex(token: str, n: int, line_no: int) -> int:
    v = _parse_int(token, line_no, 'vertex id')
    if not 1 <= v <= n:
        raise InstanceParseError(line_no, f"vertex id {v} out of range 1..{n}")
    return v - 1


def parse_instance(text: str) -> Tuple[Graph, WeightMap]:
    n: Optional[int] = None
    m = 0
    weights: Dict[int, Fraction] = {}
    edges: List[Tuple[int, int]] = []
    seen = set()
    last_line = 0
    for line_no, raw in enumerate(text.splitlines(), 1):
        last_line = line_no
        line = raw.strip()
        if not line:
            continue
        tag, *fields = line.split()
        if tag == 'c':
            continue
        if tag == 'p':
            if n is not None:
                raise InstanceParseError(line_no, "duplicate 'p' header")
            if len(fields) != 3 or fields[0] != 'svd':
                raise InstanceParseError(line_no, "expected 'p svd <n> <m>'")
            n = _parse_int(fields[1], line_no, 'n')
            m = _parse_int(fields[2], line_no, 'm')
            if n < 0 or m < 0:
                raise InstanceParseError(line_no, "n and m must be non-negative")
            continue
        if tag not in ('w', 'e'):
            raise InstanceParseError(line_no, f"unknown line type {tag!r}")
        if n is None:
            raise InstanceParseError(line_no, f"'{tag}' line before the 'p svd' header")
        if len(fields) != 2:
            raise InstanceParseError(line_no, f"'{tag}' line needs exactly two fields")
        if tag == 'w':
            v = _parse_vertex(fields[0], n, line_no)
            try:
                value = parse_rational(fields[1])
            except ValueError as e:
                raise InstanceParseError(line_no, str(e)) from None
            if value < 0:
                raise InstanceParseError(line_no, f"negative weight {value}")
            if v in weights:
                raise InstanceParseError(line_no, f"duplicate weight for vertex {v + 1}")
            weights[v] = value
        else:
            u = _parse_vertex(fields[0], n, line_no)
            v = _parse_vertex(fields[1], n, line_no)
            if u == v:
                raise InstanceParseError(line_no, f"self-loop on vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceParseError(line_no, f"duplicate edge {u + 1} {v + 1}")
            seen.add(key)
            edges.append(key)
    if n is None:
        raise InstanceParseError(max(last_line, 1), "missing 'p svd <n> <m>' header")
    if len(edges) != m:
        raise InstanceParseError(last_line, f"header declares {m} edges, found {len(edges)}")
    graph = Graph.from_edges(n, edges)
    return graph, tuple(weights.get(v, Fraction(1)) for v in range(n))


def write_instance(g: Graph, w: Sequence[Fraction], comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p svd {g.n} {g.m}")
    lines.extend(f"w {v + 1} {format_rational(w[v])}" for v in range(g.n))
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_instance(path: str) -> Tuple[Graph, WeightMap]:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Instance file {path} not found")
    with open(path, 'r', encoding='utf-8') as f:
        graph, weights = parse_instance(f.read())
    logger.debug("Loaded %s: n=%d m=%d", path, graph.n, graph.m)
    return graph, weights


def format_family(family: SeparatorFamily) -> str:
    def side(label: str, members) -> str:
        return f"{label}:" + "".join(f" {v + 1}" for v in sorted(members))

    return "".join(f"{side('A', c.a)} | {side('B', c.b)}\n" for c in family.cuts)


def parse_family(text: str, n: int) -> SeparatorFamily:
    cuts: List[Cut] = []
    universe = frozenset(range(n))
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        left, sep, right = line.partition('|')
        left, right = left.strip(), right.strip()
        if not sep or not left.startswith('A:') or not right.startswith('B:'):
            raise InstanceParseError(line_no, "expected 'A: ids | B: ids'")
        a = frozenset(_parse_vertex(t, n, line_no) for t in left[2:].split())
        b = frozenset(_parse_vertex(t, n, line_no) for t in right[2:].split())
        if a & b or (a | b) != universe:
            raise InstanceParseError(line_no, "A and B must partition the vertex set")
        cuts.append(Cut(a, b))
    return SeparatorFamily(n, cuts, 'file')
