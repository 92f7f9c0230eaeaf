"""
Target plot layout: vertices placed on concentric circles of radius
-ln C(v), with angles fitted by nonmetric MDS (Kruskal stress).

Radii are fixed; the optimiser only moves angles.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from l1_centrality.config import config
from l1_centrality.core.centrality import CentralityVector
from l1_centrality.core.geodesic import DistanceMatrix
from l1_centrality.exceptions import GraphInputError, LayoutInputError, NumericalError
from l1_centrality.io.logging_config import get_logger

logger = get_logger(__name__)

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class LayoutOptions:
    step_size: float = config.LAYOUT_STEP_SIZE
    step_decay: float = config.LAYOUT_STEP_DECAY
    convergence: float = config.LAYOUT_CONVERGENCE
    max_iterations: int = config.LAYOUT_MAX_ITERATIONS
    restarts: int = config.LAYOUT_RESTARTS
    seed: int = config.DEFAULT_SEED
    force: bool = False


@dataclass(frozen=True)
class LayoutConfiguration:
    """
    Polar placement of the vertices.

    stress is NaN until the configuration has been evaluated. final_mag is
    the normalised gradient magnitude when the optimiser stopped, while
    thetas and stress belong to the best configuration visited.
    """

    radii: np.ndarray
    thetas: np.ndarray
    median: int = 0
    stress: float = float("nan")
    iterations: int = 0
    final_mag: float = float("nan")
    fallback_vertices: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return int(self.radii.size)

    def coordinates(self) -> np.ndarray:
        """Cartesian positions (r cos theta, r sin theta), one row per vertex."""
        return np.column_stack(
            (self.radii * np.cos(self.thetas), self.radii * np.sin(self.thetas))
        )


@dataclass(frozen=True)
class MonotoneFit:
    fitted: np.ndarray


def radii(c: CentralityVector) -> np.ndarray:
    """r_i = -ln C(v_i) for centralities in (0, 1]."""
    if not (c.measure in ("l1",) or c.measure.startswith(("local-l1", "symmetrized"))):
        raise LayoutInputError(f"target plot needs an L1 centrality, got '{c.measure}'")
    values = c.values
    if np.any(values <= 0) or np.any(values > 1):
        raise GraphInputError("centralities must lie in (0, 1] to define radii")
    return 0.0 - np.log(values)


def classical_mds(dist: DistanceMatrix) -> np.ndarray:
    """
    Two-dimensional classical (Torgerson) scaling of a distance matrix.

    Negative eigenvalues are clamped to zero; each axis is oriented so that
    its largest-magnitude coordinate is positive.
    """
    n = dist.n
    if n < 2:
        raise GraphInputError("classical MDS needs at least two points")
    centering = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * centering @ (dist.d**2) @ centering
    b = (b + b.T) / 2.0
    evals, evecs = np.linalg.eigh(b)
    idx = np.argsort(evals)[::-1][:2]
    evals = np.clip(evals[idx], 0.0, None)
    evecs = evecs[:, idx]
    for axis in range(evecs.shape[1]):
        pivot = int(np.argmax(np.abs(evecs[:, axis])))
        if evecs[pivot, axis] < 0:
            evecs[:, axis] = -evecs[:, axis]
    return evecs * np.sqrt(evals)


def _wrap(thetas: np.ndarray) -> np.ndarray:
    wrapped = np.mod(thetas, TWO_PI)
    # np.mod can round a tiny negative angle up to exactly 2*pi
    wrapped[wrapped >= TWO_PI] = 0.0
    return wrapped


def initial_configuration(
    points: np.ndarray, radii: np.ndarray, median: int
) -> LayoutConfiguration:
    """
    Project every vertex onto its circle along its MDS direction from the median.

    Vertices whose MDS point coincides with the median's fall back to the
    angle 2*pi*i/n and are listed in fallback_vertices.
    """
    r = np.asarray(radii, dtype=float)
    n = r.size
    directions = np.asarray(points, dtype=float) - points[median]
    lengths = np.linalg.norm(directions, axis=1)
    thetas = _wrap(np.arctan2(directions[:, 1], directions[:, 0]))
    fallback: List[int] = []
    for i in range(n):
        if i == median:
            thetas[i] = 0.0
        elif lengths[i] < config.LAYOUT_DIRECTION_EPS:
            thetas[i] = TWO_PI * i / n
            fallback.append(i)
    if fallback:
        logger.warning(
            f"⚠️ {len(fallback)} vertices share the median's MDS position; "
            "using evenly spaced fallback angles"
        )
    return LayoutConfiguration(
        radii=r, thetas=thetas, median=median, fallback_vertices=tuple(fallback)
    )


def pair_distances(radii: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Planar distances of all unordered pairs (i < j, row-major order)."""
    iu, ju = np.triu_indices(radii.size, 1)
    squared = (
        radii[iu] ** 2
        + radii[ju] ** 2
        - 2.0 * radii[iu] * radii[ju] * np.cos(thetas[iu] - thetas[ju])
    )
    return np.sqrt(np.clip(squared, 0.0, None))


class _Block:
    """Contiguous run of sorted pairs sharing one fitted value."""

    def __init__(self, total: float, weight: float, start: int, end: int) -> None:
        self.total = total
        self.weight = weight
        self.start = start
        self.end = end

    def value(self) -> float:
        return self.total / self.weight

    def merge(self, right: "_Block") -> None:
        self.total += right.total
        self.weight += right.weight
        self.end = right.end


def monotone_fit(geodesic: np.ndarray, distances: np.ndarray) -> MonotoneFit:
    """
    Least-squares fit of configuration distances, monotone in geodesic distance.

    Pairs are stably sorted by geodesic distance; pairs with exactly equal
    geodesic distance form one block up front so their fitted values are
    equal. Blocks are then pooled by pool-adjacent-violators.
    """
    geo = np.asarray(geodesic, dtype=float)
    dist = np.asarray(distances, dtype=float)
    if geo.shape != dist.shape:
        raise GraphInputError("geodesic and configuration distances differ in length")
    if geo.size == 0:
        return MonotoneFit(fitted=dist.copy())
    order = np.argsort(geo, kind="stable")
    sorted_geo = geo[order]
    sorted_dist = dist[order]

    blocks: List[_Block] = []
    start = 0
    for end in range(1, geo.size + 1):
        if end == geo.size or sorted_geo[end] != sorted_geo[start]:
            current = _Block(float(sorted_dist[start:end].sum()), end - start, start, end)
            while blocks and blocks[-1].value() >= current.value():
                previous = blocks.pop()
                previous.merge(current)
                current = previous
            blocks.append(current)
            start = end

    fitted_sorted = np.empty_like(sorted_dist)
    for block in blocks:
        fitted_sorted[block.start : block.end] = block.value()
    fitted = np.empty_like(fitted_sorted)
    fitted[order] = fitted_sorted
    return MonotoneFit(fitted=fitted)


def _stress_terms(d: np.ndarray, dhat: np.ndarray) -> Tuple[float, float]:
    return float(np.sum((d - dhat) ** 2)), float(np.sum(d**2))


def stress_value(d: np.ndarray, dhat: np.ndarray) -> float:
    """sqrt(S*/T*) with S* = sum (d - dhat)^2 and T* = sum d^2."""
    raw, total = _stress_terms(d, dhat)
    if total == 0:
        raise NumericalError("stress is undefined: all configuration points coincide")
    return float(np.sqrt(raw / total))


def stress(configuration: LayoutConfiguration, fit: MonotoneFit) -> float:
    """Kruskal stress of a configuration against its monotone fit."""
    return stress_value(
        pair_distances(configuration.radii, configuration.thetas), fit.fitted
    )


def _gradient(
    radii: np.ndarray, thetas: np.ndarray, d: np.ndarray, dhat: np.ndarray
) -> np.ndarray:
    n = radii.size
    raw, total = _stress_terms(d, dhat)
    if raw == 0 or total == 0:
        return np.zeros(n)
    coincident = d == 0
    if np.any(coincident):
        logger.debug(f"Skipping {int(coincident.sum())} coincident pairs in the gradient")
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(coincident, 0.0, 1.0 - raw / total - dhat / d)
    pair_factor = np.zeros((n, n))
    pair_factor[np.triu_indices(n, 1)] = factor
    pair_factor = pair_factor + pair_factor.T
    sines = np.sin(thetas[:, None] - thetas[None, :])
    coefficient = np.sqrt(total / raw) / total
    return coefficient * radii * ((sines * pair_factor) @ radii)


def stress_gradient(configuration: LayoutConfiguration, fit: MonotoneFit) -> np.ndarray:
    """
    Partial derivatives of stress with respect to each angle, fit held fixed.

    Pairs at distance zero contribute nothing; a perfect fit (S* = 0) has a
    zero gradient.
    """
    d = pair_distances(configuration.radii, configuration.thetas)
    return _gradient(configuration.radii, configuration.thetas, d, fit.fitted)


def _descend(
    geodesic: np.ndarray,
    start: LayoutConfiguration,
    opts: LayoutOptions,
    callback: Optional[Callable[[LayoutConfiguration], None]],
) -> LayoutConfiguration:
    r = start.radii
    scale = float(np.sqrt(np.sum(r**2)))
    thetas = start.thetas.copy()
    step = opts.step_size
    best_thetas, best_stress = thetas.copy(), np.inf
    mag = np.nan
    iteration = 0
    for iteration in range(opts.max_iterations + 1):
        d = pair_distances(r, thetas)
        dhat = monotone_fit(geodesic, d).fitted
        current = stress_value(d, dhat)
        g = _gradient(r, thetas, d, dhat)
        mag = float(np.linalg.norm(g)) / scale
        if current < best_stress:
            best_thetas, best_stress = thetas.copy(), current
        if callback is not None:
            callback(
                replace(
                    start,
                    thetas=thetas.copy(),
                    stress=current,
                    iterations=iteration,
                    final_mag=mag,
                )
            )
        logger.debug(f"iteration {iteration}: stress={current:.6f} mag={mag:.3e}")
        if mag < opts.convergence or iteration == opts.max_iterations:
            break
        thetas = _wrap(thetas - step * g / mag)
        step *= opts.step_decay
    return replace(
        start,
        thetas=best_thetas,
        stress=best_stress,
        iterations=iteration,
        final_mag=mag,
    )


def _check_multiplicities(
    multiplicities: Optional[Sequence[float]], force: bool
) -> None:
    if multiplicities is None:
        return
    eta = np.asarray(multiplicities, dtype=float)
    if np.all(eta == eta[0]):
        return
    if not force:
        raise LayoutInputError(
            "target plots are defined for vertex-unweighted graphs; "
            "use --multiplicity equal or --force"
        )
    logger.warning("⚠️ Non-uniform multiplicities forced into the target plot")


def optimize_layout(
    dist: DistanceMatrix,
    c: CentralityVector,
    opts: LayoutOptions = LayoutOptions(),
    multiplicities: Optional[Sequence[float]] = None,
    callback: Optional[Callable[[LayoutConfiguration], None]] = None,
) -> LayoutConfiguration:
    """
    Fit the angles of a target plot by normalised gradient descent on stress.

    Args:
        dist: Geodesic distances (the dissimilarities being represented).
        c: L1 centralities defining the radii.
        opts: Step size, decay, stopping rule, restarts and seed.
        multiplicities: When given and non-uniform the layout is refused
            unless opts.force is set.
        callback: Called with every evaluated configuration.

    Returns:
        The lowest-stress configuration visited (initial MDS start first,
        then opts.restarts random starts).
    """
    _check_multiplicities(multiplicities, opts.force)
    r = radii(c)
    n = r.size
    if n != dist.n:
        raise GraphInputError(f"{n} centralities for a {dist.n}-vertex distance matrix")
    zero_radius = np.flatnonzero(r == 0)
    median = int(zero_radius[0]) if zero_radius.size else int(np.argmin(r))
    if n == 1 or not np.any(r > 0):
        return LayoutConfiguration(
            radii=r, thetas=np.zeros(n), median=median, stress=0.0, final_mag=0.0
        )

    geodesic = dist.d[np.triu_indices(n, 1)]
    start = initial_configuration(classical_mds(dist), r, median)
    best = _descend(geodesic, start, opts, callback)
    logger.info(f"Target plot stress {best.stress:.6f} after {best.iterations} iterations")

    rng = np.random.default_rng(opts.seed)
    restarts = tqdm(
        range(opts.restarts),
        desc="restarts",
        leave=False,
        disable=None if opts.restarts else True,
    )
    for _ in restarts:
        thetas = rng.uniform(0.0, TWO_PI, size=n)
        thetas[median] = 0.0
        candidate = _descend(geodesic, replace(start, thetas=thetas), opts, callback)
        if candidate.stress < best.stress:
            best = candidate
    return best
