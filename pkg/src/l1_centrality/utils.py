import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

import numpy as np
from scipy.stats import rankdata
from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")


def uniform_margin(values: Sequence[float]) -> np.ndarray:
    """
    Rank-transform a centrality vector onto {1/n, 2/n, ..., 1}.

    Args:
        values: Centrality values for n vertices.

    Returns:
        Array where the lowest value maps to 1/n, the second lowest to 2/n
        and so on; tied values share their average rank.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return arr.copy()
    return np.asarray(rankdata(arr, method="average"), dtype=float) / arr.size


def resolve_thread_count(requested: int) -> int:
    """Map the --threads flag to a worker count (0 means all CPUs)."""
    if requested < 0:
        raise ValueError(f"thread count must be >= 0, got {requested}")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def parallel_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    threads: int = 1,
    desc: Optional[str] = None,
) -> List[R]:
    """
    Apply fn to every item, preserving input order.

    Results never depend on the worker count: each call is independent and
    the output list is assembled in submission order. When desc is given a
    tqdm bar is shown on stderr (interactive terminals only).
    """
    work = list(items)
    workers = min(resolve_thread_count(threads), max(len(work), 1))
    bar: Dict[str, Any] = dict(
        total=len(work), desc=desc, leave=False, disable=None if desc else True
    )
    if workers <= 1:
        return [fn(item) for item in tqdm(work, **bar)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(tqdm(executor.map(fn, work), **bar))


def format_value(value: float, precision: str = "6") -> str:
    """Format a number for TSV output ('6' decimals or 'full' round-trip repr)."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    number = float(value)
    if math.isnan(number):
        return "nan"
    if precision == "full":
        return repr(number)
    text = f"{number:.{int(precision)}f}"
    # Rounded negative zero prints as "-0.000000"
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text
