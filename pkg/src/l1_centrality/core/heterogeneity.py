"""
Lorenz curve and Gini coefficient of centrality measurements.
"""

from dataclasses import dataclass
from typing import Dict, Hashable, Sequence, Tuple

import numpy as np

from l1_centrality.exceptions import GraphInputError


@dataclass(frozen=True)
class LorenzCurve:
    """Empirical Lorenz curve; knots at p = k/m, linear in between."""

    sorted_values: np.ndarray
    p: np.ndarray
    lp: np.ndarray
    gini: float

    def evaluate(self, p: float) -> float:
        """L(p) by linear interpolation between knots, p in [0, 1]."""
        if not 0.0 <= p <= 1.0:
            raise GraphInputError(f"Lorenz curve argument must lie in [0, 1], got {p}")
        return float(np.interp(p, self.p, self.lp))

    @property
    def knots(self) -> Tuple[Tuple[float, float], ...]:
        return tuple(zip(self.p.tolist(), self.lp.tolist()))


def _sorted_nonnegative(values: Sequence[float]) -> np.ndarray:
    arr = np.sort(np.asarray(values, dtype=float).ravel())
    if arr.size == 0:
        raise GraphInputError("need at least one value")
    if not np.all(np.isfinite(arr)) or arr[0] < 0:
        raise GraphInputError("values must be finite and nonnegative")
    if not arr.sum() > 0:
        raise GraphInputError("all values are zero; Lorenz curve is undefined")
    return arr


def _gini_sorted(x: np.ndarray) -> float:
    # sum_i sum_j |x_i - x_j| = 2 sum_i (2i - 1 - m) x_(i) for ascending x
    m = x.size
    ranks = np.arange(1, m + 1)
    pairwise = 2.0 * float(np.sum((2 * ranks - 1 - m) * x))
    return pairwise / (2.0 * m * float(x.sum()))


def gini(values: Sequence[float]) -> float:
    """
    Mean absolute pairwise difference over twice the mean (population form).

    G = sum_i sum_j |x_i - x_j| / (2 m^2 mean), computed from sorted values.
    """
    return _gini_sorted(_sorted_nonnegative(values))


def lorenz(values: Sequence[float]) -> LorenzCurve:
    """Empirical Lorenz curve of nonnegative values (not all zero)."""
    x = _sorted_nonnegative(values)
    m = x.size
    lp = np.concatenate(([0.0], np.cumsum(x) / x.sum()))
    lp[-1] = 1.0
    p = np.arange(m + 1) / m
    return LorenzCurve(sorted_values=x, p=p, lp=lp, gini=_gini_sorted(x))


def gini_from_curve(curve: LorenzCurve) -> float:
    """Twice the area between the diagonal and the curve."""
    area = float(np.sum((curve.lp[1:] + curve.lp[:-1]) * np.diff(curve.p)) / 2.0)
    return 1.0 - 2.0 * area


def group_gini(
    values: Sequence[float], groups: Sequence[Hashable]
) -> Dict[Hashable, Tuple[int, float]]:
    """Gini coefficient within each group, keyed by group with its size."""
    arr = np.asarray(values, dtype=float)
    if len(groups) != arr.size:
        raise GraphInputError(f"got {len(groups)} group labels for {arr.size} values")
    result: Dict[Hashable, Tuple[int, float]] = {}
    for group in sorted(set(groups), key=str):
        members = arr[[g == group for g in groups]]
        result[group] = (int(members.size), gini(members))
    return result
