"""
Subcommand orchestration: each method composes module operations and hands
the result to the file-operations layer. No numerical logic lives here.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from l1_centrality.config import config as default_config
from l1_centrality.core import centrality as cent
from l1_centrality.core import heterogeneity, local
from l1_centrality.core.depth import euclidean_depth_check, sample_unit_disk
from l1_centrality.core.geodesic import DistanceMatrix, geodesic_matrix
from l1_centrality.core.graph import (
    Graph,
    induced_subgraph,
    largest_component,
    with_multiplicities,
)
from l1_centrality.exceptions import GraphInputError, NumericalError
from l1_centrality.io.logging_config import get_logger
from l1_centrality.layout import render
from l1_centrality.layout.target_plot import LayoutOptions, optimize_layout
from l1_centrality.utils import format_value, uniform_margin

logger = get_logger(__name__)


@dataclass(frozen=True)
class RunSpec:
    """Everything one CLI invocation needs; validated on construction."""

    subcommand: str
    graph: Optional[Path] = None
    vertices: Optional[Path] = None
    dataset: Optional[str] = None
    data_dir: Optional[Path] = None
    multiplicity: str = "file"
    component: str = "require"
    keep: Optional[Path] = None
    algorithm: str = default_config.DEFAULT_GEODESIC_ALGORITHM
    threads: int = default_config.DEFAULT_THREADS
    precision: str = "6"
    fmt: str = "tsv"
    out: Optional[Path] = None
    dump_dist: Optional[Path] = None
    seed: int = default_config.DEFAULT_SEED
    measures: Tuple[str, ...] = default_config.MEASURES
    uniform_margin: bool = False
    vertex: Optional[str] = None
    alphas: Tuple[float, ...] = (1.0,)
    grid: Optional[Tuple[float, ...]] = None
    grid_step: int = default_config.ALPHA_GRID_STEP
    threshold: float = default_config.DIVERGENCE_THRESHOLD
    outlier_factor: float = default_config.OUTLIER_IQR_FACTOR
    groups: Optional[Path] = None
    svg: Optional[Path] = None
    png: Optional[Path] = None
    coords: Optional[Path] = None
    restarts: int = default_config.LAYOUT_RESTARTS
    force: bool = False
    points: Optional[Path] = None
    samples: int = default_config.DEPTH_CHECK_SAMPLES
    focal: int = 0

    def __post_init__(self) -> None:
        if self.subcommand not in default_config.SUBCOMMANDS:
            raise GraphInputError(f"unknown subcommand '{self.subcommand}'")
        for alpha in self.alphas + (self.grid or ()):
            if not 0.0 < alpha <= 1.0:
                raise GraphInputError(f"alpha values must lie in (0, 1], got {alpha}")
        unknown = [m for m in self.measures if m not in default_config.MEASURES]
        if unknown:
            raise GraphInputError(f"unknown measure(s): {', '.join(unknown)}")
        if self.subcommand != "depth-check" and self.graph is None and self.dataset is None:
            raise GraphInputError("give an edge file (-g) or --dataset")


class AnalysisPipeline:
    def __init__(self, config: Any, file_ops: Any) -> None:
        """
        Initialize the analysis pipeline with required dependencies.

        Args:
            config: Configuration object or module.
            file_ops: File operations module or class.
        """
        self.config = config
        self.file_ops = file_ops

    # --- input ---------------------------------------------------------

    def load_graph(self, spec: RunSpec) -> Graph:
        """Read, trim and reweight the input graph as the options request."""
        if spec.dataset is not None:
            graph = self.file_ops.load_dataset(spec.dataset, spec.data_dir)
        else:
            graph = self.file_ops.read_graph_files(spec.graph, spec.vertices)
        if spec.keep is not None:
            graph = induced_subgraph(graph, self.file_ops.read_labels(spec.keep))
        if spec.component == "largest":
            graph = largest_component(graph)
        return with_multiplicities(graph, spec.multiplicity)

    def distances(self, graph: Graph, spec: RunSpec) -> DistanceMatrix:
        dist = geodesic_matrix(graph, spec.algorithm, spec.threads)
        if spec.dump_dist is not None:
            self.file_ops.dump_distance_matrix(dist, graph.labels, spec.dump_dist)
        return dist

    def _table(
        self,
        spec: RunSpec,
        header: Sequence[str],
        rows: Sequence[Sequence[object]],
        comments: Sequence[str] = (),
    ) -> str:
        return str(
            self.file_ops.write_table(
                header, rows, spec.out, spec.precision, spec.fmt, comments
            )
        )

    # --- subcommands ---------------------------------------------------

    def measure(self, name: str, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> np.ndarray:
        if name == "l1":
            return cent.l1_centrality(dist, graph.multiplicities).values
        if name == "degree":
            return cent.degree_centrality(graph).values
        if name == "closeness":
            return cent.closeness_centrality(dist).values
        return cent.betweenness_centrality(dist, graph, threads=spec.threads).values

    def centrality(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        columns = [self.measure(m, graph, dist, spec) for m in spec.measures]
        if spec.uniform_margin:
            columns = [uniform_margin(c) for c in columns]
        rows = [
            [label] + [float(c[i]) for c in columns] for i, label in enumerate(graph.labels)
        ]
        return self._table(spec, ["label", *spec.measures], rows)

    def median(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        if spec.vertex is not None:
            focal = graph.index(spec.vertex)
            found = local.local_median(dist, graph.multiplicities, focal, spec.alphas[0])
            comments = [f"local median of {spec.vertex} at alpha={format_value(spec.alphas[0])}"]
        else:
            found = cent.graph_median(dist, graph.multiplicities)
            comments = []
        rows = [[graph.labels[i], found.objective] for i in found.indices]
        return self._table(spec, ["label", "objective"], rows, comments)

    def neighborhood(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        if spec.vertex is None:
            raise GraphInputError("neighborhood needs a focal vertex (--vertex)")
        focal = graph.index(spec.vertex)
        found = local.neighborhood(dist, graph.multiplicities, focal, spec.alphas[0])
        members = set(found.members)
        rows = [
            [label, float(found.symmetrized_scores[i]), i in members]
            for i, label in enumerate(graph.labels)
        ]
        comments = [
            f"focal\t{spec.vertex}",
            f"alpha\t{format_value(found.alpha, spec.precision)}",
            f"size\t{len(found.members)}",
        ]
        return self._table(spec, ["label", "symmetrized", "member"], rows, comments)

    def local(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        vectors = [
            local.local_l1_centrality(dist, graph.multiplicities, a, spec.threads)
            for a in spec.alphas
        ]
        rows = [
            [label] + [float(v.values[i]) for v in vectors]
            for i, label in enumerate(graph.labels)
        ]
        return self._table(spec, ["label", *(v.measure for v in vectors)], rows)

    def edges(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        found = local.multiscale_edges(
            dist, graph.multiplicities, spec.alphas[0], spec.threads
        )
        return str(self.file_ops.write_dot(found, graph.labels, spec.out))

    def profile(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        grid = spec.grid or local.default_alpha_grid(graph.n, spec.grid_step)
        found = local.centrality_profile(dist, graph.multiplicities, grid, spec.threads)
        header = ["label"] + [format_value(a, spec.precision) for a in found.alphas]
        rows = [
            [label] + found.values[i].tolist() for i, label in enumerate(graph.labels)
        ]
        return self._table(spec, header, rows)

    def _lorenz_values(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> Tuple[str, np.ndarray]:
        alpha = spec.alphas[0]
        if alpha < 1.0:
            vector = local.local_l1_centrality(dist, graph.multiplicities, alpha, spec.threads)
            return vector.measure, vector.values
        name = spec.measures[0]
        return name, self.measure(name, graph, dist, spec)

    def lorenz(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        name, values = self._lorenz_values(graph, dist, spec)
        curve = heterogeneity.lorenz(values)
        comments = [f"measure\t{name}", f"gini\t{format_value(curve.gini, spec.precision)}"]
        if spec.groups is not None:
            mapping = self.file_ops.read_groups(spec.groups)
            missing = [label for label in graph.labels if label not in mapping]
            if missing:
                raise GraphInputError(f"no group given for vertex '{missing[0]}'")
            labels = [mapping[label] for label in graph.labels]
            for group, (size, value) in heterogeneity.group_gini(values, labels).items():
                comments.append(
                    f"group\t{group}\t{size}\t{format_value(value, spec.precision)}"
                )
        if spec.svg is not None:
            render.render_lorenz_svg({name: curve}, spec.svg)
        rows = [[float(p), float(lp)] for p, lp in zip(curve.p, curve.lp)]
        return self._table(spec, ["p", "L"], rows, comments)

    def target_plot(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        svg_path = spec.svg or spec.out
        if svg_path is None:
            raise GraphInputError("target-plot needs an output path (--out plot.svg)")
        c = cent.l1_centrality(dist, graph.multiplicities)
        opts = LayoutOptions(restarts=spec.restarts, seed=spec.seed, force=spec.force)
        layout = optimize_layout(dist, c, opts, multiplicities=graph.multiplicities)
        render.render_target_plot(layout, c, graph.labels, svg_path)
        if spec.png is not None:
            render.rasterize_target_plot(layout, c, spec.png)
        text = ""
        if spec.coords is not None:
            text = str(
                self.file_ops.write_coords(layout, graph.labels, spec.coords, spec.precision)
            )
        return text

    def compare(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        names = list(self.config.MEASURES)
        raw = [self.measure(m, graph, dist, spec) for m in names]
        margins = [uniform_margin(v) for v in raw]
        header = ["label", *names, *(f"{m}_um" for m in names)]
        rows = [
            [label] + [float(v[i]) for v in raw] + [float(v[i]) for v in margins]
            for i, label in enumerate(graph.labels)
        ]
        comments = []
        for kind in ("pearson", "spearman"):
            for other, values in zip(names[1:], raw[1:]):
                try:
                    r = cent.correlation(raw[0], values, kind)
                except NumericalError as e:
                    logger.warning(f"⚠️ {kind} l1/{other}: {e}")
                    r = float("nan")
                comments.append(f"{kind}\tl1\t{other}\t{format_value(r, spec.precision)}")
        return self._table(spec, header, rows, comments)

    def depth_check(self, spec: RunSpec) -> str:
        if spec.points is not None:
            points = self.file_ops.read_points(spec.points)
            focal = spec.focal
        else:
            points = np.vstack((np.zeros((1, 2)), sample_unit_disk(spec.samples, spec.seed)))
            focal = 0
        eta = np.ones(points.shape[0])
        result = euclidean_depth_check(points, eta, focal)
        bound = 1.0 - max(result.ebar_norm - 1.0 / points.shape[0], 0.0)
        rows = [[points.shape[0], focal, result.lhs, result.depth, bound]]
        return self._table(spec, ["points", "focal", "lhs", "depth", "lower_bound"], rows)

    def outliers(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        mean, flags = cent.distance_outliers(dist, spec.outlier_factor)
        rows = [
            [label, float(mean[i]), bool(flags[i])] for i, label in enumerate(graph.labels)
        ]
        return self._table(spec, ["label", "mean_distance", "outlier"], rows)

    def divergence(self, graph: Graph, dist: DistanceMatrix, spec: RunSpec) -> str:
        table = local.global_local_divergence(
            dist, graph.multiplicities, spec.alphas[0], spec.threshold, spec.threads
        )
        rows = [
            [
                label,
                float(table.global_margin[i]),
                float(table.local_margin[i]),
                float(table.difference[i]),
                bool(table.flagged[i]),
            ]
            for i, label in enumerate(graph.labels)
        ]
        comments = [f"alpha\t{format_value(table.alpha, spec.precision)}"]
        return self._table(
            spec, ["label", "global_um", "local_um", "difference", "flagged"], rows, comments
        )

    def run(self, spec: RunSpec) -> str:
        """Execute one subcommand and return the text it emitted."""
        logger.info(f"🔧 Running '{spec.subcommand}'")
        if spec.subcommand == "depth-check":
            return self.depth_check(spec)
        graph = self.load_graph(spec)
        dist = self.distances(graph, spec)
        handlers = {
            "centrality": self.centrality,
            "median": self.median,
            "neighborhood": self.neighborhood,
            "local": self.local,
            "edges": self.edges,
            "profile": self.profile,
            "lorenz": self.lorenz,
            "target-plot": self.target_plot,
            "compare": self.compare,
            "outliers": self.outliers,
            "divergence": self.divergence,
        }
        return handlers[spec.subcommand](graph, dist, spec)


