"""
Global L1 centrality, graph medians and the classical comparison measures.
Every measure here consumes a precomputed DistanceMatrix.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import stats

from l1_centrality.config import config
from l1_centrality.core.geodesic import DistanceMatrix
from l1_centrality.core.graph import Graph
from l1_centrality.exceptions import GraphInputError, NumericalError
from l1_centrality.io.logging_config import get_logger
from l1_centrality.utils import parallel_map

logger = get_logger(__name__)


@dataclass(frozen=True)
class CentralityVector:
    """Per-vertex scores tagged with the measure that produced them.

    measure is one of 'l1', 'degree', 'closeness', 'betweenness',
    'local-l1(<alpha>)' or 'symmetrized(<i>)'.
    """

    measure: str
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class MedianSet:
    indices: Tuple[int, ...]
    objective: float


def _as_multiplicities(eta: Sequence[float], n: int) -> np.ndarray:
    arr = np.asarray(eta, dtype=float)
    if arr.shape != (n,):
        raise GraphInputError(f"expected {n} multiplicities, got shape {arr.shape}")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise GraphInputError("multiplicities must be finite and nonnegative")
    return arr


def l1_scores(d: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """
    Row-max matrix form of the L1 centrality for a (sub)matrix of distances.

    C = 1 - rowmax{(D eta 1^T - 1 eta^T D) / (eta. D)}^+ with the diagonal
    excluded from the row max and 0/0 read as 0.
    """
    n = d.shape[0]
    if n == 1:
        return np.ones(1)
    total = float(eta.sum())
    if not total > 0:
        raise GraphInputError("total multiplicity must be positive")
    s = d @ eta
    numerator = s[:, None] - s[None, :]
    denominator = total * d
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(denominator > 0, numerator / denominator, 0.0)
    np.fill_diagonal(ratio, -np.inf)
    return 1.0 - np.maximum(ratio.max(axis=1), 0.0)


def l1_centrality(dist: DistanceMatrix, eta: Sequence[float]) -> CentralityVector:
    """
    Global L1 centrality of every vertex in O(n^2) given the distances.

    Args:
        dist: Geodesic distance matrix.
        eta: Nonnegative multiplicities with a positive total.

    Returns:
        CentralityVector with values in [0, 1]; graph medians score 1.
    """
    weights = _as_multiplicities(eta, dist.n)
    return CentralityVector("l1", l1_scores(dist.d, weights))


def median_objective(d: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """sum_j eta_j d(v_i, v_j) for every i."""
    return d @ eta


def _argmin_set(objective: np.ndarray, rtol: float) -> Tuple[int, ...]:
    best = float(objective.min())
    slack = rtol * abs(best)
    return tuple(int(i) for i in np.flatnonzero(objective <= best + slack))


def graph_median(
    dist: DistanceMatrix, eta: Sequence[float], rtol: float = config.MEDIAN_RTOL
) -> MedianSet:
    """All vertices minimising the multiplicity-weighted distance sum."""
    weights = _as_multiplicities(eta, dist.n)
    objective = median_objective(dist.d, weights)
    indices = _argmin_set(objective, rtol)
    return MedianSet(indices=indices, objective=float(objective.min()))


def restricted_median(d: np.ndarray, eta: np.ndarray, rtol: float = config.MEDIAN_RTOL) -> MedianSet:
    """Graph median of a distance submatrix; indices are local to the submatrix."""
    objective = median_objective(d, eta)
    return MedianSet(indices=_argmin_set(objective, rtol), objective=float(objective.min()))


def l1_centrality_oracle(
    dist: DistanceMatrix,
    eta: Sequence[float],
    k: int,
    tol: float = config.ORACLE_BISECTION_TOL,
) -> float:
    """
    L1 centrality of one vertex straight from its definition.

    Bisects the smallest extra normalized multiplicity w in [0, 1] that makes
    v_k a graph median and returns 1 - w. Only the median objective is
    evaluated; the closed form is never used. Intended for small test graphs.
    """
    weights = _as_multiplicities(eta, dist.n)
    if dist.n == 1:
        return 1.0
    p = weights / weights.sum()
    d = dist.d

    def is_median(w: float) -> bool:
        boosted = p.copy()
        boosted[k] += w
        objective = d @ boosted
        return bool(objective[k] <= objective.min())

    if is_median(0.0):
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_median(mid):
            hi = mid
        else:
            lo = mid
    return 1.0 - 0.5 * (lo + hi)


def degree_centrality(g: Graph) -> CentralityVector:
    """Number of incident edges; edge weights are ignored."""
    return CentralityVector("degree", np.array([g.degree(i) for i in range(g.n)], dtype=float))


def closeness_centrality(dist: DistanceMatrix) -> CentralityVector:
    """Reciprocal of the sum of distances to all other vertices."""
    if dist.n < 2:
        raise GraphInputError("closeness centrality needs at least two vertices")
    return CentralityVector("closeness", 1.0 / dist.d.sum(axis=1))


def _source_dependencies(
    dist: DistanceMatrix, g: Graph, source: int, rtol: float
) -> np.ndarray:
    """Brandes dependency accumulation for one source over weighted geodesics."""
    d = dist.d[source]
    order = np.argsort(d, kind="stable")
    sigma = np.zeros(g.n)
    sigma[source] = 1.0
    predecessors: List[List[int]] = [[] for _ in range(g.n)]
    for v in order:
        if v == source:
            continue
        for u, w in g.neighbors(int(v)):
            if d[u] < d[v] and abs(d[u] + w - d[v]) <= rtol * d[v]:
                sigma[v] += sigma[u]
                predecessors[v].append(u)
    delta = np.zeros(g.n)
    for v in order[::-1]:
        for u in predecessors[v]:
            delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v])
    delta[source] = 0.0
    return delta


def betweenness_centrality(
    dist: DistanceMatrix,
    g: Graph,
    rtol: float = config.BETWEENNESS_TIE_RTOL,
    threads: int = config.DEFAULT_THREADS,
) -> CentralityVector:
    """
    Sum over unordered pairs {j, k} of the fraction of geodesics through i.

    A path is a geodesic when its length is within rtol (relative) of
    d(v_j, v_k); path counts are kept as floats.
    """
    contributions = parallel_map(
        lambda s: _source_dependencies(dist, g, s, rtol), range(g.n), threads
    )
    total = np.zeros(g.n)
    for row in contributions:
        total += row
    # every unordered pair was visited from both ends
    return CentralityVector("betweenness", total / 2.0)


def correlation(x: Sequence[float], y: Sequence[float], kind: str = "pearson") -> float:
    """
    Pearson product-moment or Spearman rank correlation (average ranks on ties).

    Raises:
        GraphInputError: unequal lengths, fewer than two values or unknown kind.
        NumericalError: constant input (correlation undefined).
    """
    a = np.asarray(x, dtype=float)
    b = np.asarray(y, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise GraphInputError("correlation needs two vectors of equal length")
    if a.size < 2:
        raise GraphInputError("correlation needs at least two values")
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise NumericalError("correlation is undefined for constant input")
    if kind == "pearson":
        result = stats.pearsonr(a, b)
    elif kind == "spearman":
        result = stats.spearmanr(a, b)
    else:
        raise GraphInputError(f"unknown correlation kind '{kind}'")
    return float(result.statistic)


def distance_outliers(
    dist: DistanceMatrix, factor: float = config.OUTLIER_IQR_FACTOR
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Flag vertices far from the rest of the graph.

    Returns:
        (mean distance of each vertex to all others, boolean flags for means
        above Q3 + factor * IQR).
    """
    if dist.n < 2:
        return np.zeros(dist.n), np.zeros(dist.n, dtype=bool)
    mean = dist.d.sum(axis=1) / (dist.n - 1)
    q1, q3 = np.quantile(mean, [0.25, 0.75])
    return mean, mean > q3 + factor * (q3 - q1)
