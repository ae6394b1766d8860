"""Simple undirected graphs: construction, parsing, serialization, statistics.

Nodes are dense integer indices 0..n-1. Original input labels are kept in a
sidecar tuple so written output can restore them; labels never take part in
graph equality.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Input text cannot be parsed as a graph."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ValueError):
    """Parsed or constructed content violates simple-graph constraints."""


class Graph:
    """Immutable simple undirected graph on nodes 0..n-1.

    Edges are unordered pairs stored once as (u, v) tuples with u < v.
    Membership tests run against a frozenset; sorted adjacency lists are
    derived at construction time. No self-loops, no duplicate edges.
    """

    __slots__ = ("n", "edges", "labels", "_adj")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ):
        if n < 0:
            raise ValidationError(f"node count must be nonnegative, got {n}")
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) outside node range 0..{n - 1}")
            if u == v:
                raise ValidationError(f"self-loop at node {u}")
            normalized.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: frozenset[tuple[int, int]] = frozenset(normalized)
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValidationError(
                    f"got {len(labels)} labels for {n} nodes"
                )
        self.labels = labels
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """New graph on the same nodes and labels with a replaced edge set."""
        return Graph(self.n, edges, self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GraphSummary:
    """Structural summary: counts, mean degree, mean distance, diameter.

    avg_distance is the mean shortest-path length over ordered reachable
    pairs (s, t), s != t; diameter is the largest finite shortest-path
    length. A graph without edges has no defined diameter: both distance
    fields are reported as 0 with zero_edges set.
    """

    nodes: int
    edges: int
    avg_degree: float
    avg_distance: float
    diameter: int
    zero_edges: bool = False


def degree_sequence(g: Graph) -> list[int]:
    """Degree of every node, indexed by node id."""
    return [g.degree(v) for v in range(g.n)]


def shortest_path_lengths(g: Graph, source: int) -> list[float]:
    """BFS distances from source; unreachable nodes get math.inf."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} outside node range 0..{g.n - 1}")
    dist = [math.inf] * g.n
    dist[source] = 0.0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1.0
        for w in g.neighbors(u):
            if dist[w] == math.inf:
                dist[w] = du
                queue.append(w)
    return dist


def summary_stats(g: Graph) -> GraphSummary:
    """Node/edge counts, average degree, average distance, diameter."""
    n, m = g.n, g.m
    avg_degree = (2.0 * m / n) if n else 0.0
    if m == 0:
        return GraphSummary(n, 0, avg_degree, 0.0, 0, zero_edges=True)
    total = 0.0
    pairs = 0
    diameter = 0
    for s in range(n):
        for t, d in enumerate(shortest_path_lengths(g, s)):
            if t == s or d == math.inf:
                continue
            total += d
            pairs += 1
            if d > diameter:
                diameter = int(d)
    avg_distance = total / pairs if pairs else 0.0
    return GraphSummary(n, m, avg_degree, avg_distance, diameter)


_SPLIT = re.compile(r"[,\s]+")


def _lines(text: str | Iterable[str]) -> Iterator[str]:
    if isinstance(text, str):
        return iter(text.splitlines())
    return iter(text)


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse whitespace- or comma-separated node pairs, one edge per line.

    Blank lines and lines starting with '#' are skipped. Tokens are used as
    node labels and mapped to dense indices in first-appearance order.
    Duplicate edges (in either orientation) collapse to one.
    """
    index: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        if len(tokens) != 2:
            raise ParseError(
                f"expected two node tokens, got {len(tokens)}: {line!r}", lineno
            )
        a, b = tokens
        if a == b:
            raise ValidationError(f"line {lineno}: self-loop on node {a!r}")
        u = index.setdefault(a, len(index))
        v = index.setdefault(b, len(index))
        edges.add((u, v) if u < v else (v, u))
    return Graph(len(index), edges, tuple(index))


_GML_TOKEN = re.compile(r'"[^"]*"|\[|\]|[^\s\[\]"]+')


def _skip_gml_block(tokens: list[str], pos: int) -> int:
    """Advance past a balanced [...] block; pos points at the '['."""
    depth = 0
    while pos < len(tokens):
        if tokens[pos] == "[":
            depth += 1
        elif tokens[pos] == "]":
            depth -= 1
            if depth == 0:
                return pos + 1
        pos += 1
    raise ParseError("unbalanced brackets in GML input")


def _parse_gml_record(tokens: list[str], pos: int, wanted: tuple[str, ...]) -> tuple[dict[str, int], int]:
    """Parse one [ key value ... ] record, keeping integer values for wanted keys."""
    fields: dict[str, int] = {}
    pos += 1  # consume '['
    while pos < len(tokens):
        tok = tokens[pos]
        if tok == "]":
            return fields, pos + 1
        if tok == "[":
            pos = _skip_gml_block(tokens, pos)
            continue
        key = tok
        pos += 1
        if pos >= len(tokens):
            break
        if tokens[pos] == "[":
            pos = _skip_gml_block(tokens, pos)
        else:
            if key in wanted:
                try:
                    fields[key] = int(tokens[pos])
                except ValueError:
                    raise ParseError(
                        f"key {key!r} needs an integer value, got {tokens[pos]!r}"
                    ) from None
            pos += 1
    raise ParseError("unterminated record in GML input")


def parse_gml(text: str) -> Graph:
    """Parse the GML subset: a graph block with node [id N] and edge
    [source A target B] records. All other keys are skipped.

    GML node ids map to dense indices in declaration order; the original id
    is kept as the node label.
    """
    tokens = _GML_TOKEN.findall(text)
    pos = 0
    while pos < len(tokens) and tokens[pos] != "graph":
        pos += 1
    if pos >= len(tokens) or pos + 1 >= len(tokens) or tokens[pos + 1] != "[":
        raise ParseError("no graph [ ... ] block found")
    pos += 2
    ids: dict[int, int] = {}
    raw_edges: list[tuple[int, int]] = []
    while pos < len(tokens):
        tok = tokens[pos]
        if tok == "]":
            break
        if tok == "node" and pos + 1 < len(tokens) and tokens[pos + 1] == "[":
            fields, pos = _parse_gml_record(tokens, pos + 1, ("id",))
            if "id" not in fields:
                raise ParseError("node record without id")
            nid = fields["id"]
            if nid in ids:
                raise ParseError(f"duplicate node id {nid}")
            ids[nid] = len(ids)
        elif tok == "edge" and pos + 1 < len(tokens) and tokens[pos + 1] == "[":
            fields, pos = _parse_gml_record(tokens, pos + 1, ("source", "target"))
            if "source" not in fields or "target" not in fields:
                raise ParseError("edge record without source/target")
            raw_edges.append((fields["source"], fields["target"]))
        elif pos + 1 < len(tokens) and tokens[pos + 1] == "[":
            pos = _skip_gml_block(tokens, pos + 1)
        else:
            pos += 2  # unknown key-value pair
    else:
        raise ParseError("unterminated graph block")
    edges = []
    for s, t in raw_edges:
        if s not in ids or t not in ids:
            missing = s if s not in ids else t
            raise ParseError(f"edge references undeclared node id {missing}")
        if s == t:
            raise ValidationError(f"self-loop on node id {s}")
        edges.append((ids[s], ids[t]))
    return Graph(len(ids), edges, tuple(str(i) for i in ids))


def serialize_edge_list(g: Graph) -> str:
    """Canonical edge list: one 'label_u label_v' line per edge, edges
    sorted ascending by index pair."""
    for label in g.labels:
        if not label or _SPLIT.search(label) or label.startswith("#"):
            raise ValidationError(
                f"label {label!r} cannot be written to edge-list format"
            )
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_gml(g: Graph) -> str:
    """GML form of the graph: node ids are the dense indices, edges sorted."""
    out = ["graph", "[", "  directed 0"]
    for i in range(g.n):
        out.append(f"  node [ id {i} ]")
    for u, v in sorted(g.edges):
        out.append(f"  edge [ source {u} target {v} ]")
    out.append("]")
    return "\n".join(out) + "\n"
