"""
Local L1 centrality: symmetrized centralities, L1 centrality-based
neighborhoods, local medians, multiscale edges and centrality profiles.

Restricted computations always reuse the original distance submatrix;
shortest paths are never recomputed on an induced subgraph.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from l1_centrality.config import config
from l1_centrality.core.centrality import (
    CentralityVector,
    MedianSet,
    l1_centrality,
    l1_scores,
    restricted_median,
)
from l1_centrality.core.geodesic import DistanceMatrix
from l1_centrality.exceptions import GraphInputError
from l1_centrality.io.logging_config import get_logger
from l1_centrality.utils import format_value, parallel_map, uniform_margin

logger = get_logger(__name__)


@dataclass(frozen=True)
class NeighborhoodSet:
    focal: int
    alpha: float
    members: Tuple[int, ...]
    symmetrized_scores: np.ndarray


@dataclass(frozen=True)
class MultiscaleEdges:
    """Arcs from every vertex to each of its local medians (self-arcs omitted)."""

    alpha: float
    arcs: Tuple[Tuple[int, int], ...]
    median_vertices: Tuple[int, ...]


@dataclass(frozen=True)
class CentralityProfile:
    alphas: Tuple[float, ...]
    values: np.ndarray


@dataclass(frozen=True)
class DivergenceTable:
    alpha: float
    global_margin: np.ndarray
    local_margin: np.ndarray
    difference: np.ndarray
    flagged: np.ndarray


def _check_alpha(alpha: float) -> float:
    value = float(alpha)
    if not 0.0 < value <= 1.0:
        raise GraphInputError(f"locality level alpha must lie in (0, 1], got {alpha}")
    return value


def _weights(eta: Sequence[float], n: int) -> np.ndarray:
    arr = np.asarray(eta, dtype=float)
    if arr.shape != (n,):
        raise GraphInputError(f"expected {n} multiplicities, got shape {arr.shape}")
    if np.any(arr < 0) or not arr.sum() > 0:
        raise GraphInputError("multiplicities must be nonnegative with a positive total")
    return arr


def _alpha_tag(alpha: float) -> str:
    return f"local-l1({format_value(alpha)})"


def symmetrized_centrality(
    dist: DistanceMatrix, eta: Sequence[float], i: int
) -> CentralityVector:
    """
    L1 centrality of the graph mirrored about vertex i.

    Equivalent to the centrality of the original vertices in the 2n-1 vertex
    graph that duplicates everything except v_i; computed by replacing eta_i
    with eta. + eta_i on the original graph.
    """
    weights = _weights(eta, dist.n)
    boosted = weights.copy()
    boosted[i] = weights.sum() + weights[i]
    return CentralityVector(f"symmetrized({i})", l1_scores(dist.d, boosted))


def neighborhood_size(n: int, alpha: float) -> int:
    """ceil(alpha * n) clamped to [1, n]."""
    exact = _check_alpha(alpha) * n
    nearest = round(exact)
    if math.isclose(exact, nearest, rel_tol=config.ALPHA_SNAP_RTOL):
        k = nearest
    else:
        k = math.ceil(exact)
    return min(max(k, 1), n)


def neighborhood(
    dist: DistanceMatrix, eta: Sequence[float], i: int, alpha: float
) -> NeighborhoodSet:
    """
    Vertices whose symmetrized centrality about v_i reaches the ceil(alpha*n)-th
    largest score; every tie at the threshold is included.
    """
    alpha = _check_alpha(alpha)
    scores = symmetrized_centrality(dist, eta, i).values
    k = neighborhood_size(dist.n, alpha)
    threshold = np.sort(scores)[::-1][k - 1]
    selected = scores >= threshold - config.NEIGHBORHOOD_TIE_TOL
    selected[i] = True
    members = tuple(int(j) for j in np.flatnonzero(selected))
    return NeighborhoodSet(focal=i, alpha=alpha, members=members, symmetrized_scores=scores)


def _local_value(
    dist: DistanceMatrix,
    weights: np.ndarray,
    k: int,
    alpha: float,
    global_values: np.ndarray,
) -> float:
    members = neighborhood(dist, weights, k, alpha).members
    if len(members) == dist.n:
        return float(global_values[k])
    sub_eta = weights[list(members)]
    # a massless neighborhood has every member as a median (0/0 read as 0)
    if len(members) == 1 or not sub_eta.sum() > 0:
        return 1.0
    return float(l1_scores(dist.submatrix(members), sub_eta)[members.index(k)])


def local_l1_centrality(
    dist: DistanceMatrix,
    eta: Sequence[float],
    alpha: float,
    threads: int = config.DEFAULT_THREADS,
) -> CentralityVector:
    """
    Local L1 centrality of every vertex at locality level alpha.

    Each vertex is scored by the L1 centrality formula evaluated only over
    its own neighborhood. A neighborhood covering the whole graph reuses the
    global value, so alpha = 1 reproduces l1_centrality exactly.
    """
    alpha = _check_alpha(alpha)
    weights = _weights(eta, dist.n)
    global_values = l1_centrality(dist, weights).values
    values = parallel_map(
        lambda k: _local_value(dist, weights, k, alpha, global_values),
        range(dist.n),
        threads,
        desc=f"local alpha={alpha:g}" if dist.n > 100 else None,
    )
    return CentralityVector(_alpha_tag(alpha), np.array(values, dtype=float))


def local_median(
    dist: DistanceMatrix, eta: Sequence[float], i: int, alpha: float
) -> MedianSet:
    """Graph median of the neighborhood of v_i (indices refer to the full graph)."""
    weights = _weights(eta, dist.n)
    members = neighborhood(dist, weights, i, alpha).members
    local = restricted_median(dist.submatrix(members), weights[list(members)])
    return MedianSet(
        indices=tuple(members[j] for j in local.indices), objective=local.objective
    )


def multiscale_edges(
    dist: DistanceMatrix,
    eta: Sequence[float],
    alpha: float,
    threads: int = config.DEFAULT_THREADS,
) -> MultiscaleEdges:
    """Arc k -> m for each local median m != k of every vertex k."""
    alpha = _check_alpha(alpha)
    weights = _weights(eta, dist.n)
    medians: List[MedianSet] = parallel_map(
        lambda k: local_median(dist, weights, k, alpha), range(dist.n), threads
    )
    arcs = tuple((k, m) for k, found in enumerate(medians) for m in found.indices if m != k)
    median_vertices = tuple(sorted({m for found in medians for m in found.indices}))
    logger.debug(f"Multiscale edges at alpha={alpha:g}: {len(arcs)} arcs")
    return MultiscaleEdges(alpha=alpha, arcs=arcs, median_vertices=median_vertices)


def default_alpha_grid(n: int, step: int = config.ALPHA_GRID_STEP) -> Tuple[float, ...]:
    """{step/n, 2*step/n, ...} within (0, 1]; [1.0] when step/n exceeds 1."""
    if n < 1 or step < 1:
        raise GraphInputError("alpha grid needs n >= 1 and step >= 1")
    grid = tuple(k / n for k in range(step, n + 1, step))
    return grid if grid else (1.0,)


def centrality_profile(
    dist: DistanceMatrix,
    eta: Sequence[float],
    alphas: Sequence[float],
    threads: int = config.DEFAULT_THREADS,
) -> CentralityProfile:
    """
    Local L1 centrality over a grid of locality levels, one row per vertex.

    Every column is mapped onto the uniform margin (rank / n, average ranks
    for ties) and each row is then centered to mean zero.
    """
    grid = tuple(_check_alpha(a) for a in alphas)
    if not grid:
        raise GraphInputError("alpha grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise GraphInputError("alpha grid must be strictly increasing")
    columns = [
        uniform_margin(local_l1_centrality(dist, eta, alpha, threads).values)
        for alpha in grid
    ]
    values = np.column_stack(columns)
    values = values - values.mean(axis=1, keepdims=True)
    return CentralityProfile(alphas=grid, values=values)


def global_local_divergence(
    dist: DistanceMatrix,
    eta: Sequence[float],
    alpha: float,
    threshold: float = config.DIVERGENCE_THRESHOLD,
    threads: int = config.DEFAULT_THREADS,
    local: Optional[CentralityVector] = None,
) -> DivergenceTable:
    """
    Compare global and local L1 centrality on the uniform margin.

    Vertices prominent in their neighborhood but peripheral overall (or the
    reverse) are flagged when |global - local| exceeds threshold.
    """
    alpha = _check_alpha(alpha)
    if local is None:
        local = local_l1_centrality(dist, eta, alpha, threads)
    global_margin = uniform_margin(l1_centrality(dist, _weights(eta, dist.n)).values)
    local_margin = uniform_margin(local.values)
    difference = global_margin - local_margin
    return DivergenceTable(
        alpha=alpha,
        global_margin=global_margin,
        local_margin=local_margin,
        difference=difference,
        flagged=np.abs(difference) > threshold,
    )
