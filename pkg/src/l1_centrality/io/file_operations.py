"""
File utilities for L1 centrality analysis.
Handles graph/label/point input, TSV and tabulate output, DOT export and
the published dataset loaders.
"""

import os
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tabulate import tabulate

from l1_centrality.config import config
from l1_centrality.core.geodesic import DistanceMatrix
from l1_centrality.core.graph import Graph, parse_graph
from l1_centrality.core.local import MultiscaleEdges
from l1_centrality.exceptions import DatasetError, GraphInputError
from l1_centrality.io.logging_config import get_logger
from l1_centrality.layout.target_plot import LayoutConfiguration
from l1_centrality.utils import format_value

logger = get_logger(__name__)

Row = Sequence[object]

_DOT_ID = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*|-?(\.[0-9]+|[0-9]+(\.[0-9]*)?))$")


def read_text(path: Path) -> str:
    """Read a UTF-8 text file, dropping a leading byte order mark."""
    try:
        return Path(path).read_text(encoding="utf-8-sig")
    except UnicodeDecodeError as e:
        raise GraphInputError(
            f"not valid UTF-8 (byte {e.start}: {e.reason})", source=str(path)
        ) from e


def read_graph_files(edge_path: Path, vertex_path: Optional[Path] = None) -> Graph:
    """Parse an edge TSV and optional vertex TSV; errors name the file and line."""
    edge_path = Path(edge_path)
    vertex_text = read_text(vertex_path) if vertex_path is not None else None
    graph = parse_graph(
        read_text(edge_path),
        vertex_text,
        edge_source=str(edge_path),
        vertex_source=str(vertex_path) if vertex_path is not None else "vertices",
    )
    logger.info(
        f"📥 Loaded graph from {edge_path.name}: n={graph.n}, |E|={graph.m}, "
        f"eta.={graph.total_multiplicity:g}"
    )
    return graph


def _data_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        lines.append((number, raw.rstrip("\r\n").split("\t")))
    return lines


def read_labels(path: Path) -> List[str]:
    """One vertex label per line (first column)."""
    return [fields[0] for _, fields in _data_lines(read_text(path))]


def read_groups(path: Path) -> Dict[str, str]:
    """Map label -> group from 'label<TAB>group' lines."""
    groups: Dict[str, str] = {}
    for number, fields in _data_lines(read_text(path)):
        if len(fields) != 2:
            raise GraphInputError(
                "expected 'label<TAB>group'", line=number, source=str(path)
            )
        groups[fields[0]] = fields[1]
    return groups


def read_points(path: Path) -> np.ndarray:
    """Numeric point coordinates, one tab-separated row per point."""
    rows = []
    for number, fields in _data_lines(read_text(path)):
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise GraphInputError(
                "malformed coordinate", line=number, source=str(path)
            ) from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise GraphInputError("points must be a nonempty rectangular table", source=str(path))
    return np.array(rows, dtype=float)


def _cell(value: object, precision: str) -> str:
    if isinstance(value, str):
        return value
    return format_value(value, precision)  # type: ignore[arg-type]


def format_table(
    header: Sequence[str],
    rows: Sequence[Row],
    precision: str = "6",
    fmt: str = "tsv",
    comments: Sequence[str] = (),
) -> str:
    """
    Render rows as TSV (header row first, '#' comment lines on top) or as a
    tabulate 'simple' table for the console.
    """
    cells = [[_cell(value, precision) for value in row] for row in rows]
    if fmt == "table":
        body = tabulate(
            cells, headers=list(header), tablefmt="simple", disable_numparse=True
        )
        lines = [f"# {c}" for c in comments] + [body]
    else:
        lines = [f"# {c}" for c in comments]
        lines.append("\t".join(header))
        lines.extend("\t".join(row) for row in cells)
    return "\n".join(lines) + "\n"


def emit(text: str, out: Optional[Path] = None) -> None:
    """Write text to a file, or to stdout when out is None."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"💾 Wrote {out}")


def write_table(
    header: Sequence[str],
    rows: Sequence[Row],
    out: Optional[Path] = None,
    precision: str = "6",
    fmt: str = "tsv",
    comments: Sequence[str] = (),
) -> str:
    text = format_table(header, rows, precision, fmt, comments)
    emit(text, out)
    return text


def dot_id(label: str) -> str:
    """Quote a DOT identifier unless it is a plain identifier or numeral."""
    if _DOT_ID.match(label):
        return label
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_dot(edges: MultiscaleEdges, labels: Sequence[str]) -> str:
    """Digraph of vertex -> local median arcs; local medians drawn larger."""
    medians = set(edges.median_vertices)
    lines = ["digraph multiscale {", f'  graph [label="alpha={format_value(edges.alpha)}"];']
    for i, label in enumerate(labels):
        attrs = " [width=0.6,height=0.6]" if i in medians else ""
        lines.append(f"  {dot_id(label)}{attrs};")
    for source, target in edges.arcs:
        lines.append(f"  {dot_id(labels[source])} -> {dot_id(labels[target])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(
    edges: MultiscaleEdges, labels: Sequence[str], path: Optional[Path] = None
) -> str:
    text = format_dot(edges, labels)
    emit(text, path)
    return text


def dump_distance_matrix(
    dist: DistanceMatrix, labels: Sequence[str], path: Path, precision: str = "full"
) -> str:
    """Write the geodesic matrix as a labeled square TSV."""
    rows = [[label] + list(dist.d[i]) for i, label in enumerate(labels)]
    text = format_table([""] + list(labels), rows, precision)
    emit(text, path)
    return text


def write_coords(
    configuration: LayoutConfiguration,
    labels: Sequence[str],
    path: Path,
    precision: str = "6",
) -> str:
    """Target plot coordinates: label, r, theta, x, y with a stress comment."""
    xy = configuration.coordinates()
    rows = [
        [label, configuration.radii[i], configuration.thetas[i], xy[i, 0], xy[i, 1]]
        for i, label in enumerate(labels)
    ]
    comments = [
        f"stress\t{format_value(configuration.stress, precision)}",
        f"iterations\t{configuration.iterations}",
    ]
    text = format_table(["label", "r", "theta", "x", "y"], rows, precision, comments=comments)
    emit(text, path)
    return text


def resolve_data_dir(data_dir: Optional[Path]) -> Path:
    if data_dir is not None:
        return Path(data_dir)
    env = os.environ.get(config.DATASET_ENV_VAR)
    if env:
        return Path(env)
    raise DatasetError(
        f"no data directory given (use --data-dir or set {config.DATASET_ENV_VAR}). "
        + config.DATASET_FETCH_HINT
    )


def load_dataset(name: str, data_dir: Optional[Path] = None) -> Graph:
    """
    Load one of the published networks from exported TSV files.

    Raises:
        DatasetError: unknown name, missing files (with fetch instructions)
            or vertex/edge counts that differ from the published sizes.
    """
    if name not in config.DATASETS:
        raise DatasetError(
            f"unknown dataset '{name}' (choose from {', '.join(config.DATASETS)})"
        )
    entry = config.DATASETS[name]
    directory = resolve_data_dir(data_dir)
    edge_path = directory / str(entry["edges"])
    vertex_path = directory / str(entry["vertices"])
    missing = [p.name for p in (edge_path, vertex_path) if not p.is_file()]
    if missing:
        raise DatasetError(
            f"dataset '{name}' not found in {directory}: missing {', '.join(missing)}. "
            + config.DATASET_FETCH_HINT
        )
    graph = read_graph_files(edge_path, vertex_path)
    expected = (entry["n_vertices"], entry["n_edges"])
    if (graph.n, graph.m) != expected:
        raise DatasetError(
            f"dataset '{name}' does not match the published size: "
            f"vertices {graph.n} (expected {expected[0]}), "
            f"edges {graph.m} (expected {expected[1]})"
        )
    return graph
