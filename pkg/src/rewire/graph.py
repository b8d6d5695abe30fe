"""Simple undirected graph, edge-list ingestion, and degree-preserving mutation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import IO, TYPE_CHECKING, Iterable

from .errors import ParseError, RewiringError, SelfLoopError

if TYPE_CHECKING:
    from .candidates import RewireCandidate

Edge = tuple[int, int]

_COMMENT_PREFIXES = ("#", "%")


def edge(u: int, v: int) -> Edge:
    """Canonical unordered edge: endpoints ordered ascending, no self-loops."""
    if u == v:
        raise SelfLoopError(f"self-loop at node {u}")
    return (u, v) if u < v else (v, u)


@dataclass
class ParseReport:
    """Bookkeeping from one parse: totals for lines seen and collapsed duplicates."""

    lines: int = 0
    comments: int = 0
    duplicates: int = 0


class Graph:
    """Undirected simple graph over dense 0-based integer node ids.

    External labels from input files are kept in ``labels`` for reporting;
    all internal operations use the dense ids. Equality compares structure
    only (node count and edge set), not labels.
    """

    __slots__ = ("node_count", "edges", "adjacency", "labels", "parse_report")

    def __init__(
        self,
        node_count: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: list[str] | None = None,
        parse_report: ParseReport | None = None,
    ):
        if node_count < 0:
            raise ValueError("node_count must be nonnegative")
        if labels is not None and len(labels) != node_count:
            raise ValueError("labels length must equal node_count")
        self.node_count = node_count
        self.labels = labels
        self.parse_report = parse_report
        self.edges: set[Edge] = set()
        self.adjacency: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            e = edge(u, v)
            if not (0 <= e[0] and e[1] < node_count):
                raise ValueError(f"edge {e} outside node range 0..{node_count - 1}")
            self._add_edge(e)

    def _add_edge(self, e: Edge) -> None:
        if e not in self.edges:
            self.edges.add(e)
            self.adjacency[e[0]].add(e[1])
            self.adjacency[e[1]].add(e[0])

    def _remove_edge(self, e: Edge) -> None:
        self.edges.remove(e)
        self.adjacency[e[0]].discard(e[1])
        self.adjacency[e[1]].discard(e[0])

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> set[int]:
        """Neighbor set of v. Treat as read-only; mutate only via rewiring."""
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.node_count = self.node_count
        g.labels = self.labels
        g.parse_report = self.parse_report
        g.edges = set(self.edges)
        g.adjacency = [set(s) for s in self.adjacency]
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and self.edges == other.edges

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={len(self.edges)})"


def parse_edge_list(source: str | IO[str]) -> Graph:
    """Parse whitespace-separated edge-list text into a graph.

    One edge per line as two node labels; lines starting with '#' or '%' are
    ignored. Duplicate lines (either orientation) collapse to one edge and are
    tallied in the attached parse report. Labels are mapped to dense ids in
    first-appearance order.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source.read().splitlines()
    report = ParseReport()
    ids: dict[str, int] = {}
    labels: list[str] = []
    edges: set[Edge] = set()

    def intern(tok: str) -> int:
        nid = ids.get(tok)
        if nid is None:
            nid = len(labels)
            ids[tok] = nid
            labels.append(tok)
        return nid

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        report.lines += 1
        if not line:
            continue
        if line.startswith(_COMMENT_PREFIXES):
            report.comments += 1
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two tokens, got {len(tokens)}: {line!r}", lineno)
        a, b = tokens
        if a == b:
            raise SelfLoopError(f"line {lineno}: self-loop on label {a!r}")
        e = edge(intern(a), intern(b))
        if e in edges:
            report.duplicates += 1
        else:
            edges.add(e)
    return Graph(len(labels), edges, labels=labels, parse_report=report)


def write_edge_list(g: Graph, stream: IO[str] | None = None) -> str | None:
    """Canonical edge-list serialization: "u v" per line by internal id, sorted."""
    text = "".join(f"{u} {v}\n" for u, v in sorted(g.edges))
    if stream is None:
        return text
    stream.write(text)
    return None


def degree_sequence(g: Graph) -> list[int]:
    """Per-node degrees indexed by node id; sums to 2M."""
    return [len(s) for s in g.adjacency]


def _check_rewirable(g: Graph, c: "RewireCandidate") -> None:
    nodes = {*c.source_a, *c.source_b}
    if len(nodes) != 4:
        raise RewiringError(f"shared endpoint between source edges {c.source_a} and {c.source_b}")
    for e in (c.source_a, c.source_b):
        if e not in g.edges:
            raise RewiringError(f"source edge {e} missing from graph")
    for e in (c.created_a, c.created_b):
        if e in g.edges:
            raise RewiringError(f"created edge {e} already present in graph")


def _apply_inplace(g: Graph, c: "RewireCandidate") -> None:
    g._remove_edge(c.source_a)
    g._remove_edge(c.source_b)
    g._add_edge(c.created_a)
    g._add_edge(c.created_b)


def apply_rewiring(g: Graph, c: "RewireCandidate") -> Graph:
    """Replace the candidate's source edges with its created edges.

    Returns a new graph snapshot; degrees and edge count are unchanged.
    Raises RewiringError naming the violated condition when inapplicable.
    """
    _check_rewirable(g, c)
    out = g.copy()
    _apply_inplace(out, c)
    return out


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted id lists, largest first (ties by smallest member)."""
    seen = [False] * g.node_count
    comps: list[list[int]] = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def component_count(g: Graph) -> int:
    return len(connected_components(g))
