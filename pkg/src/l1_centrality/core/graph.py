"""
Graph data model for L1 centrality analysis.
Handles edge/vertex TSV parsing, serialization, connectivity and trimming.
"""

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from l1_centrality.exceptions import GraphInputError
from l1_centrality.io.logging_config import get_logger

logger = get_logger(__name__)

Edge = Tuple[int, int, float]


@dataclass(frozen=True)
class Graph:
    """Undirected graph with vertex multiplicities and positive edge weights.

    Immutable after construction; safe to share between worker threads.
    """

    labels: Tuple[str, ...]
    multiplicities: np.ndarray
    edges: Tuple[Edge, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)
    _adjacency: Tuple[Tuple[Tuple[int, float], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        eta = np.array(self.multiplicities, dtype=float)
        eta.setflags(write=False)
        object.__setattr__(self, "multiplicities", eta)
        _validate(self.labels, eta, self.edges)
        object.__setattr__(
            self, "_index", {label: i for i, label in enumerate(self.labels)}
        )
        neighbours: List[List[Tuple[int, float]]] = [[] for _ in self.labels]
        for u, v, w in self.edges:
            neighbours[u].append((v, w))
            neighbours[v].append((u, w))
        object.__setattr__(
            self, "_adjacency", tuple(tuple(nbrs) for nbrs in neighbours)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.multiplicities, other.multiplicities)
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.edges))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_multiplicity(self) -> float:
        return float(self.multiplicities.sum())

    def index(self, label: str) -> int:
        """Return the vertex index for a label."""
        try:
            return self._index[label]
        except KeyError:
            raise GraphInputError(f"unknown vertex label '{label}'") from None

    def neighbors(self, i: int) -> Tuple[Tuple[int, float], ...]:
        """Return (neighbour, weight) pairs incident to vertex i."""
        return self._adjacency[i]

    def degree(self, i: int) -> int:
        return len(self._adjacency[i])


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    components: Tuple[Tuple[int, ...], ...]


def _check_real(value: float, what: str) -> None:
    if math.isnan(value) or math.isinf(value):
        raise GraphInputError(f"{what} must be finite, got {value}")


def _validate(
    labels: Sequence[str], eta: np.ndarray, edges: Sequence[Edge]
) -> None:
    """Check the structural invariants of a graph."""
    n = len(labels)
    if n == 0:
        raise GraphInputError("graph has no vertices")
    if len(set(labels)) != n:
        raise GraphInputError("vertex labels must be unique")
    if eta.shape != (n,):
        raise GraphInputError(
            f"expected {n} multiplicities, got shape {eta.shape}"
        )
    if not np.all(np.isfinite(eta)):
        raise GraphInputError("multiplicities must be finite")
    if np.any(eta < 0):
        raise GraphInputError("multiplicities must be nonnegative")
    if not eta.sum() > 0:
        raise GraphInputError("total multiplicity must be positive")
    seen = set()
    for u, v, w in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u}, {v}) references a missing vertex")
        if u == v:
            raise GraphInputError(f"self-loop at '{labels[u]}'")
        _check_real(w, "edge weight")
        if not w > 0:
            raise GraphInputError(
                f"nonpositive weight {w} on edge '{labels[u]}'-'{labels[v]}'"
            )
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise GraphInputError(
                f"duplicate edge '{labels[u]}'-'{labels[v]}'"
            )
        seen.add(pair)


def _content_lines(text: str) -> Iterable[Tuple[int, List[str]]]:
    """Yield (line number, tab-separated fields), skipping blanks and comments."""
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield number, line.split("\t")


def _parse_float(token: str, what: str, line: int, source: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphInputError(
            f"malformed {what} '{token}'", line=line, source=source
        ) from None
    if math.isnan(value) or math.isinf(value):
        raise GraphInputError(f"{what} must be finite", line=line, source=source)
    return value


def parse_graph(
    edge_text: str,
    vertex_text: Optional[str] = None,
    edge_source: str = "edges",
    vertex_source: str = "vertices",
) -> Graph:
    """
    Parse edge-list and optional vertex TSV text into a Graph.

    Args:
        edge_text: Lines "u<TAB>v<TAB>weight"; weight omitted means 1.0.
        vertex_text: Lines "label<TAB>multiplicity"; when omitted every
            vertex has multiplicity 1.0 and vertices follow first appearance.
        edge_source: Name used for edge_text in error messages.
        vertex_source: Name used for vertex_text in error messages.

    Returns:
        The parsed Graph.

    Raises:
        GraphInputError: malformed line (with line number), nonpositive
            weight, negative multiplicity, self-loop, duplicate pair or
            unknown label.
    """
    labels: List[str] = []
    multiplicities: List[float] = []
    index: Dict[str, int] = {}
    from_vertex_file = vertex_text is not None

    if vertex_text is not None:
        for number, fields in _content_lines(vertex_text):
            if len(fields) not in (1, 2) or not fields[0]:
                raise GraphInputError(
                    "expected 'label<TAB>multiplicity'", line=number, source=vertex_source
                )
            label = fields[0]
            if label in index:
                raise GraphInputError(
                    f"duplicate vertex label '{label}'", line=number, source=vertex_source
                )
            eta = 1.0
            if len(fields) == 2:
                eta = _parse_float(fields[1], "multiplicity", number, vertex_source)
            if eta < 0:
                raise GraphInputError(
                    f"negative multiplicity {eta} for '{label}'",
                    line=number,
                    source=vertex_source,
                )
            index[label] = len(labels)
            labels.append(label)
            multiplicities.append(eta)

    edges: List[Edge] = []
    seen: Dict[Tuple[int, int], int] = {}
    for number, fields in _content_lines(edge_text):
        if len(fields) not in (2, 3) or not fields[0] or not fields[1]:
            raise GraphInputError(
                "expected 'u<TAB>v<TAB>weight'", line=number, source=edge_source
            )
        weight = 1.0
        if len(fields) == 3:
            weight = _parse_float(fields[2], "weight", number, edge_source)
        if weight <= 0:
            raise GraphInputError(
                f"nonpositive weight {weight}", line=number, source=edge_source
            )
        ends = []
        for label in fields[:2]:
            if label not in index:
                if from_vertex_file:
                    raise GraphInputError(
                        f"unknown vertex label '{label}'", line=number, source=edge_source
                    )
                index[label] = len(labels)
                labels.append(label)
                multiplicities.append(1.0)
            ends.append(index[label])
        u, v = ends
        if u == v:
            raise GraphInputError(
                f"self-loop at '{fields[0]}'", line=number, source=edge_source
            )
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise GraphInputError(
                f"duplicate edge '{fields[0]}'-'{fields[1]}' "
                f"(first given on line {seen[pair]})",
                line=number,
                source=edge_source,
            )
        seen[pair] = number
        edges.append((u, v, weight))

    graph = Graph(tuple(labels), np.array(multiplicities, dtype=float), tuple(edges))
    logger.debug(
        f"Parsed graph: n={graph.n}, |E|={graph.m}, eta.={graph.total_multiplicity:g}"
    )
    return graph


def serialize_graph(g: Graph) -> Tuple[str, str]:
    """Write a graph back to (edge_text, vertex_text); parse_graph inverts it."""
    edge_lines = [f"{g.labels[u]}\t{g.labels[v]}\t{w!r}" for u, v, w in g.edges]
    vertex_lines = [
        f"{label}\t{float(eta)!r}" for label, eta in zip(g.labels, g.multiplicities)
    ]
    return "\n".join(edge_lines) + "\n", "\n".join(vertex_lines) + "\n"


def connectivity(g: Graph) -> ConnectivityReport:
    """Partition the vertices into maximal connected subsets by breadth-first search."""
    component_of = [-1] * g.n
    components: List[Tuple[int, ...]] = []
    for start in range(g.n):
        if component_of[start] >= 0:
            continue
        label = len(components)
        component_of[start] = label
        members = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, _ in g.neighbors(u):
                if component_of[v] < 0:
                    component_of[v] = label
                    members.append(v)
                    queue.append(v)
        components.append(tuple(sorted(members)))
    return ConnectivityReport(connected=len(components) == 1, components=tuple(components))


def induced_subgraph(g: Graph, keep: Iterable[Union[int, str]]) -> Graph:
    """
    Restrict a graph to a vertex subset (original order preserved).

    Multiplicities and every edge with both ends kept carry over unchanged.
    """
    selected = set()
    for item in keep:
        selected.add(g.index(item) if isinstance(item, str) else int(item))
    if not selected:
        raise GraphInputError("vertex selection is empty")
    order = sorted(selected)
    if order[0] < 0 or order[-1] >= g.n:
        raise GraphInputError("vertex selection references a missing vertex")
    remap = {old: new for new, old in enumerate(order)}
    edges = tuple(
        (remap[u], remap[v], w) for u, v, w in g.edges if u in remap and v in remap
    )
    return Graph(
        tuple(g.labels[i] for i in order), g.multiplicities[order].copy(), edges
    )


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component (lowest index wins ties)."""
    report = connectivity(g)
    if report.connected:
        return g
    best = max(report.components, key=len)
    logger.warning(
        f"⚠️ Graph has {len(report.components)} components; "
        f"keeping the largest ({len(best)} of {g.n} vertices)"
    )
    return induced_subgraph(g, best)


def with_multiplicities(g: Graph, mode: str) -> Graph:
    """
    Replace the multiplicities of a graph.

    Args:
        g: Input graph.
        mode: 'file' keeps them, 'equal' sets all to 1, 'reciprocal' uses 1/eta.
    """
    if mode == "file":
        return g
    if mode == "equal":
        return Graph(g.labels, np.ones(g.n), g.edges)
    if mode == "reciprocal":
        if np.any(g.multiplicities == 0):
            raise GraphInputError("reciprocal multiplicities need every eta > 0")
        return Graph(g.labels, 1.0 / g.multiplicities, g.edges)
    raise GraphInputError(f"unknown multiplicity mode '{mode}'")
