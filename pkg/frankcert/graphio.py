"""
Graph data model, graph6 / edge-list input and edge connectivity.

Vertices are dense integers 0..n-1. Edges are indexed by their EdgeId,
the position in `edges`, which is the parse order of the input and is the
index used by every flow, orientation and certificate downstream.
"""

import logging
from functools import cached_property
from typing import Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_validator

from .errors import GraphFormatError, TooFewVerticesError

log = logging.getLogger(__name__)

EdgeId = int
GraphFormat = Literal["graph6", "edgelist"]

GRAPH6_HEADER = ">>graph6<<"
_G6_MIN = 63
_G6_MAX = 126


class _EdgeCarrier(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex_count: NonNegativeInt
    edges: tuple[tuple[int, int], ...] = ()

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[EdgeId, ...], ...]:
        """Incident EdgeIds per vertex, ascending"""
        inc: list[list[EdgeId]] = [[] for _ in range(self.vertex_count)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(xs) for xs in inc)

    def other(self, e: EdgeId, x: int) -> int:
        u, v = self.edges[e]
        return v if x == u else u

    @model_validator(mode="after")
    def _check_endpoints(self):
        for e, (u, v) in enumerate(self.edges):
            if u == v:
                raise ValueError(f"Edge {e} is a loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(
                    f"Edge {e}=({u},{v}) has a vertex outside 0..{self.vertex_count - 1}"
                )
        return self


class Graph(_EdgeCarrier):
    """Simple undirected graph, every edge stored as (u, v) with u < v"""

    @model_validator(mode="after")
    def _check_simple(self):
        seen: set[tuple[int, int]] = set()
        for e, (u, v) in enumerate(self.edges):
            if u > v:
                raise ValueError(f"Edge {e}=({u},{v}) is not stored as u < v")
            if (u, v) in seen:
                raise ValueError(f"Edge {e}=({u},{v}) is a duplicate")
            seen.add((u, v))
        return self


class Multigraph(_EdgeCarrier):
    """Parallel edges allowed. `parent` maps each edge to the Graph edge it copies"""

    parent: tuple[EdgeId, ...] | None = None

    @model_validator(mode="after")
    def _check_parent(self):
        if self.parent is not None and len(self.parent) != len(self.edges):
            raise ValueError(
                f"parent map has {len(self.parent)} entries for {len(self.edges)} edges"
            )
        return self


class Orientation(BaseModel):
    """direction[e] is True when edge e=(u,v) is the arc u->v"""

    model_config = ConfigDict(frozen=True)

    direction: tuple[bool, ...]

    def arcs(self, g: _EdgeCarrier) -> list[tuple[int, int]]:
        return [
            (u, v) if forward else (v, u)
            for (u, v), forward in zip(g.edges, self.direction)
        ]

    def reversed(self) -> "Orientation":
        return Orientation(direction=tuple(not d for d in self.direction))


class MinCut(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: NonNegativeInt
    edges: tuple[EdgeId, ...]
    side: tuple[int, ...]


def _strip_graph6(text: str) -> str:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    return s


def _g6_value(s: str, offset: int) -> int:
    x = ord(s[offset])
    if not (_G6_MIN <= x <= _G6_MAX):
        raise GraphFormatError(f"Invalid graph6 byte {s[offset]!r}", offset=offset)
    return x - _G6_MIN


def parse_graph6(text: str) -> Graph:
    """
    Decode one graph6 line.

    Edges come out in the graph6 bit order: column-major over the upper
    triangle, (0,1), (0,2), (1,2), (0,3), ...
    """
    s = _strip_graph6(text)
    if not s:
        raise GraphFormatError("Empty graph6 input", offset=0)

    first = ord(s[0])
    if not (_G6_MIN <= first <= _G6_MAX):
        raise GraphFormatError(f"Invalid graph6 header byte {s[0]!r}", offset=0)

    if first < _G6_MAX:
        n, pos = first - _G6_MIN, 1
    else:
        width = 6 if len(s) > 1 and ord(s[1]) == _G6_MAX else 3
        start = 2 if width == 6 else 1
        if len(s) < start + width:
            raise GraphFormatError("Truncated graph6 vertex count", offset=len(s))
        n = 0
        for i in range(start, start + width):
            n = (n << 6) | _g6_value(s, i)
        pos = start + width

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - pos < nbytes:
        raise GraphFormatError(
            f"Truncated graph6 bit stream, expected {nbytes} bytes for n={n}",
            offset=len(s),
        )
    if len(s) - pos > nbytes:
        raise GraphFormatError("Trailing garbage after graph6 data", offset=pos + nbytes)

    bits: list[int] = []
    for i in range(pos, pos + nbytes):
        x = _g6_value(s, i)
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphFormatError("Nonzero graph6 padding bits", offset=pos + nbytes - 1)

    edges: list[tuple[int, int]] = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(vertex_count=n, edges=tuple(edges))


def to_graph6(g: Graph) -> str:
    """Encode as a graph6 line without header (edge order is not encoded)"""
    data: bytes = nx.to_graph6_bytes(to_networkx(g), header=False)
    return data.decode("ascii").strip()


def parse_edge_list(text: str) -> Graph:
    """
    Plain edge list: a header line "n m" then m lines "u v".

    Blank lines and lines starting with '#' are skipped. EdgeIds follow the
    order of the edge lines.
    """
    rows: list[tuple[int, list[str]]] = [
        (ix, line.split())
        for ix, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise GraphFormatError("Empty edge list", line=1)

    def _ints(lineno: int, xs: list[str]) -> tuple[int, int]:
        if len(xs) != 2:
            raise GraphFormatError(f"Expected two integers, got {xs}", line=lineno)
        try:
            return int(xs[0]), int(xs[1])
        except ValueError:
            raise GraphFormatError(f"Expected two integers, got {xs}", line=lineno)

    header_line, header = rows[0]
    n, m = _ints(header_line, header)
    if n < 0 or m < 0:
        raise GraphFormatError(f"Negative size in header {header}", line=header_line)
    body = rows[1:]
    if len(body) < m:
        raise GraphFormatError(
            f"Expected {m} edge lines, found {len(body)}", line=header_line
        )
    if len(body) > m:
        raise GraphFormatError("Trailing content after the edge lines", line=body[m][0])

    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, xs in body:
        u, v = _ints(lineno, xs)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(
                f"Vertex out of range in edge ({u},{v}), n={n}", line=lineno
            )
        if u == v:
            raise GraphFormatError(f"Loop at vertex {u}", line=lineno)
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise GraphFormatError(
                f"Duplicate edge {pair} (first on line {seen[pair]})", line=lineno
            )
        seen[pair] = lineno
        edges.append(pair)
    return Graph(vertex_count=n, edges=tuple(edges))


def parse_graph(text: str, fmt: GraphFormat = "graph6") -> Graph:
    """Parse a single graph. For graph6 the first non-blank line is used"""
    if fmt == "edgelist":
        return parse_edge_list(text)
    for line in text.splitlines():
        if line.strip():
            return parse_graph6(line)
    raise GraphFormatError("No graph6 line found", offset=0)


def to_networkx(g: _EdgeCarrier) -> nx.MultiGraph | nx.Graph:
    G: nx.Graph = nx.MultiGraph() if isinstance(g, Multigraph) else nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    for e, (u, v) in enumerate(g.edges):
        G.add_edge(u, v, id=e)
    return G


def from_networkx(G: nx.Graph) -> Graph:
    """Relabel nodes to 0..n-1 (in G's node order), edges sorted by (u, v)"""
    index = {x: i for i, x in enumerate(G.nodes())}
    edges = sorted(
        (min(index[a], index[b]), max(index[a], index[b])) for a, b in G.edges()
    )
    return Graph(vertex_count=len(index), edges=tuple(edges))


def _flow_network(g: _EdgeCarrier) -> nx.DiGraph:
    # every undirected edge is a pair of unit-capacity arcs, parallel edges add up
    D = nx.DiGraph()
    D.add_nodes_from(range(g.vertex_count))
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            if D.has_edge(a, b):
                D[a][b]["capacity"] += 1
            else:
                D.add_edge(a, b, capacity=1)
    return D


def minimum_edge_cut(g: _EdgeCarrier) -> MinCut:
    """
    Global minimum edge cut via unit-capacity max-flows from vertex 0 to
    every other vertex (Menger). Ties keep the first sink in vertex order.
    """
    if g.vertex_count < 2:
        raise TooFewVerticesError(g.vertex_count)
    D = _flow_network(g)
    best: MinCut | None = None
    for t in range(1, g.vertex_count):
        value, (source_side, _) = nx.minimum_cut(D, 0, t)
        if best is None or value < best.value:
            side = frozenset(source_side)
            cut = tuple(
                e for e, (u, v) in enumerate(g.edges) if (u in side) != (v in side)
            )
            best = MinCut(value=int(value), edges=cut, side=tuple(sorted(side)))
            if best.value == 0:
                break
    assert best is not None
    log.debug(f"Minimum edge cut value={best.value} edges={best.edges}")
    return best


def edge_connectivity(g: _EdgeCarrier) -> int:
    return minimum_edge_cut(g).value


def double(g: Graph) -> Multigraph:
    """Every edge twice; copies 2e and 2e+1 both have parent e"""
    edges: list[tuple[int, int]] = []
    parent: list[EdgeId] = []
    for e, uv in enumerate(g.edges):
        edges.extend((uv, uv))
        parent.extend((e, e))
    return Multigraph(
        vertex_count=g.vertex_count, edges=tuple(edges), parent=tuple(parent)
    )
