"""
Test configuration: import paths and shared graph fixtures.
"""

import sys
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np
import pytest

# Add src directory to Python path for imports
src_path = Path(__file__).parent.parent / "src"
if str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

from l1_centrality.core.graph import Graph, parse_graph  # noqa: E402

PATH3_EDGES = "A\tB\nB\tC\n"
STAR_EDGES = "H\tx\nH\ty\nH\tz\n"
K3_EDGES = "A\tB\nB\tC\nA\tC\n"
C4_EDGES = "A\tB\nB\tC\nC\tD\nD\tA\n"


@pytest.fixture
def path3() -> Graph:
    return parse_graph(PATH3_EDGES)


@pytest.fixture
def star() -> Graph:
    return parse_graph(STAR_EDGES)


@pytest.fixture
def k3() -> Graph:
    return parse_graph(K3_EDGES)


@pytest.fixture
def c4() -> Graph:
    return parse_graph(C4_EDGES)


def build_random_graph(
    rng: np.random.Generator,
    n: int,
    extra_edge_prob: float = 0.3,
    zero_eta_prob: float = 0.15,
    uniform: bool = False,
) -> Graph:
    """Random connected graph: a random spanning tree plus extra edges."""
    pairs = {}
    for v in range(1, n):
        u = int(rng.integers(v))
        pairs[(u, v)] = float(rng.uniform(0.1, 10.0))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in pairs and rng.random() < extra_edge_prob:
                pairs[(u, v)] = float(rng.uniform(0.1, 10.0))
    if uniform:
        eta = np.ones(n)
    else:
        eta = rng.uniform(0.0, 5.0, size=n)
        eta[rng.random(n) < zero_eta_prob] = 0.0
        if eta.sum() == 0:
            eta[0] = 1.0
    labels = tuple(f"v{i}" for i in range(n))
    edges = tuple((u, v, w) for (u, v), w in sorted(pairs.items()))
    return Graph(labels, eta, edges)


@pytest.fixture
def random_graph() -> Callable[..., Graph]:
    """Factory: random_graph(seed, n, ...) -> connected Graph."""

    def factory(seed: int, n: Optional[int] = None, **kwargs: Any) -> Graph:
        rng = np.random.default_rng(seed)
        size = int(rng.integers(2, 9)) if n is None else n
        return build_random_graph(rng, size, **kwargs)

    return factory


@pytest.fixture
def graph_files(tmp_path: Path) -> Callable[[str, Optional[str]], Path]:
    """Write edge (and optional vertex) TSV text to tmp_path and return the edge path."""

    def write(edge_text: str, vertex_text: Optional[str] = None) -> Path:
        edges = tmp_path / "edges.tsv"
        edges.write_text(edge_text, encoding="utf-8")
        if vertex_text is not None:
            (tmp_path / "vertices.tsv").write_text(vertex_text, encoding="utf-8")
        return edges

    return write
