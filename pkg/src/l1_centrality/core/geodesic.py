"""
All-pairs geodesic distances, the shared input of every centrality measure.
Provides priority-queue single-source runs and dense all-pairs relaxation.
"""

import heapq
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from l1_centrality.config import config
from l1_centrality.core.graph import Graph, connectivity
from l1_centrality.exceptions import (
    DisconnectedGraphError,
    GraphInputError,
    NumericalError,
)
from l1_centrality.io.logging_config import get_logger
from l1_centrality.utils import parallel_map

logger = get_logger(__name__)


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense n x n geodesic distances (symmetric, zero diagonal, finite)."""

    d: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.d, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise GraphInputError(f"distance matrix must be square, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "d", arr)

    @property
    def n(self) -> int:
        return int(self.d.shape[0])

    def submatrix(self, members: Sequence[int]) -> np.ndarray:
        """Rows and columns restricted to the given vertex indices."""
        idx = np.asarray(members, dtype=int)
        return self.d[np.ix_(idx, idx)]

    def scaled(self, factor: float) -> "DistanceMatrix":
        return DistanceMatrix(self.d * factor)


def validate_distance_matrix(
    dist: DistanceMatrix, rtol: float = config.TRIANGLE_RTOL
) -> None:
    """
    Assert the metric invariants of a geodesic matrix.

    Raises:
        NumericalError: non-finite entry, asymmetry, nonzero diagonal or a
            triangle inequality violation beyond rtol.
    """
    d = dist.d
    if not np.all(np.isfinite(d)):
        raise NumericalError("distance matrix has non-finite entries")
    if np.any(np.diag(d) != 0):
        raise NumericalError("distance matrix has a nonzero diagonal")
    if not np.array_equal(d, d.T):
        raise NumericalError("distance matrix is not symmetric")
    scale = float(d.max()) if d.size else 0.0
    for k in range(dist.n):
        via_k = d[:, k, None] + d[None, k, :]
        if np.any(d > via_k + rtol * scale):
            raise NumericalError(f"triangle inequality violated through vertex {k}")


def _single_source(g: Graph, source: int) -> np.ndarray:
    """Dijkstra from one source with a binary heap."""
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    done = np.zeros(g.n, dtype=bool)
    heap = [(0.0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.neighbors(u):
            candidate = du + w
            if candidate < dist[v]:
                dist[v] = candidate
                heapq.heappush(heap, (candidate, v))
    return dist


def _per_source(g: Graph, threads: int) -> np.ndarray:
    rows: List[np.ndarray] = parallel_map(
        lambda s: _single_source(g, s), range(g.n), threads
    )
    return np.vstack(rows)


def _all_pairs(g: Graph) -> np.ndarray:
    """Floyd-Warshall relaxation, vectorised over the (i, j) plane for each k."""
    d = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v, w in g.edges:
        d[u, v] = d[v, u] = w
    for k in range(g.n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def choose_algorithm(g: Graph, algorithm: str = "auto") -> str:
    if algorithm not in config.GEODESIC_ALGORITHMS:
        raise GraphInputError(
            f"unknown shortest-path algorithm '{algorithm}' "
            f"(choose from {', '.join(config.GEODESIC_ALGORITHMS)})"
        )
    if algorithm != "auto":
        return algorithm
    if g.m < g.n * g.n / config.AUTO_DENSITY_DIVISOR:
        return "per-source"
    return "all-pairs"


def geodesic_matrix(
    g: Graph,
    algorithm: str = config.DEFAULT_GEODESIC_ALGORITHM,
    threads: int = config.DEFAULT_THREADS,
    validate: bool = True,
) -> DistanceMatrix:
    """
    Compute the dense geodesic distance matrix of a connected graph.

    Args:
        g: Connected input graph.
        algorithm: 'per-source' (heap Dijkstra per vertex), 'all-pairs'
            (triple-loop relaxation) or 'auto' (per-source when |E| < n^2/4).
        threads: Workers for per-source runs; output does not depend on it.
        validate: Check symmetry, zero diagonal and triangle inequality.

    Raises:
        DisconnectedGraphError: names one vertex pair with no path.
    """
    report = connectivity(g)
    if not report.connected:
        first, second = report.components[0], report.components[1]
        raise DisconnectedGraphError((g.labels[first[0]], g.labels[second[0]]))

    chosen = choose_algorithm(g, algorithm)
    logger.debug(f"Geodesics via {chosen} for n={g.n}, |E|={g.m}")
    d = _per_source(g, threads) if chosen == "per-source" else _all_pairs(g)
    # Path sums accumulated in different orders may differ in the last bit
    d = np.minimum(d, d.T)
    dist = DistanceMatrix(d)
    if validate:
        validate_distance_matrix(dist)
    return dist


def distance_matrix_from_points(points: np.ndarray) -> DistanceMatrix:
    """Euclidean distance matrix of a point cloud."""
    pts = np.asarray(points, dtype=float)
    d = cdist(pts, pts)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(np.minimum(d, d.T))
