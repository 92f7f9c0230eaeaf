"""
Euclidean consistency check: L1 centrality computed from point-cloud
distances against the multivariate L1 depth of the same point.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from l1_centrality.config import config
from l1_centrality.core.geodesic import distance_matrix_from_points
from l1_centrality.exceptions import GraphInputError
from l1_centrality.io.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class DepthCheck:
    lhs: float
    depth: float
    ebar_norm: float


def sample_unit_disk(m: int, seed: int = config.DEFAULT_SEED) -> np.ndarray:
    """Draw m points uniformly from the unit disk (deterministic for a seed)."""
    if m < 1:
        raise GraphInputError(f"sample size must be positive, got {m}")
    rng = np.random.default_rng(seed)
    radius = np.sqrt(rng.uniform(0.0, 1.0, size=m))
    angle = rng.uniform(0.0, 2.0 * np.pi, size=m)
    return np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))


def euclidean_depth_check(
    points: np.ndarray, eta: Sequence[float], focal: int
) -> DepthCheck:
    """
    Compare the centrality formula on Euclidean distances with L1 depth.

    Args:
        points: m x d coordinates.
        eta: Nonnegative weights, one per point.
        focal: Index of the point under test.

    Returns:
        DepthCheck where lhs is the L1 centrality of the focal point using
        Euclidean norms as distances, and depth = 1 - ||e_bar|| with e_bar
        the weighted mean of unit vectors from the others to the focal point.

    Raises:
        GraphInputError: fewer than two points, bad weights, or another
            point coinciding with the focal point.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise GraphInputError("depth check needs an m x d array with m >= 2")
    m = pts.shape[0]
    weights = np.asarray(eta, dtype=float)
    if weights.shape != (m,) or np.any(weights < 0) or not weights.sum() > 0:
        raise GraphInputError("weights must be m nonnegative values with a positive total")
    if not 0 <= focal < m:
        raise GraphInputError(f"focal index {focal} out of range")

    d = distance_matrix_from_points(pts).d
    others = np.arange(m) != focal
    if np.any(d[focal, others] == 0):
        raise GraphInputError("another point coincides with the focal point")

    total = float(weights.sum())
    s = d @ weights
    ratio = (s[focal] - s[others]) / (total * d[focal, others])
    lhs = 1.0 - max(float(ratio.max()), 0.0)

    diffs = pts[focal] - pts[others]
    units = diffs / d[focal, others][:, None]
    ebar = (weights[others][:, None] * units).sum(axis=0) / total
    ebar_norm = float(np.linalg.norm(ebar))
    logger.debug(f"Depth check on {m} points: lhs={lhs:.6f}, |e_bar|={ebar_norm:.6f}")
    return DepthCheck(lhs=lhs, depth=1.0 - ebar_norm, ebar_norm=ebar_norm)
