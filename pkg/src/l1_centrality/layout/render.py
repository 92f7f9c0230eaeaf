"""
SVG and PNG output for target plots and Lorenz curves.
"""

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
from PIL import Image, ImageDraw

from l1_centrality.config import config
from l1_centrality.core.centrality import CentralityVector
from l1_centrality.core.heterogeneity import LorenzCurve
from l1_centrality.io.logging_config import get_logger
from l1_centrality.layout.target_plot import LayoutConfiguration

logger = get_logger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
MARGIN = 24.0
MARKER_RADIUS = 4.0
CURVE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _num(value: float) -> str:
    return f"{value:.3f}"


def _svg_root(size: int) -> ET.Element:
    return ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": str(size),
            "height": str(size),
            "viewBox": f"0 0 {size} {size}",
        },
    )


def _write_svg(root: ET.Element, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ET.indent(root)
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)
    logger.info(f"💾 Wrote {path}")
    return path


def quartile_circles(centralities: CentralityVector) -> List[Tuple[float, float]]:
    """(quantile value, radius) for each reference circle, innermost first."""
    values = np.quantile(centralities.values, config.QUARTILE_LEVELS)
    return [(float(q), float(0.0 - np.log(q))) for q in values]


class _Canvas:
    """Maps layout coordinates (origin at the median) to pixels."""

    def __init__(self, size: int, extent: float) -> None:
        self.center = size / 2.0
        usable = self.center - MARGIN
        self.scale = usable / extent if extent > 0 else 1.0

    def point(self, x: float, y: float) -> Tuple[float, float]:
        return self.center + self.scale * x, self.center - self.scale * y

    def length(self, r: float) -> float:
        return self.scale * r


def _marker_positions(
    configuration: LayoutConfiguration, canvas: _Canvas
) -> List[Tuple[float, float, bool]]:
    """Pixel position of each vertex and whether it is drawn as a median."""
    coords = configuration.coordinates()
    positions = []
    tied = 0
    for i, (x, y) in enumerate(coords):
        px, py = canvas.point(float(x), float(y))
        is_median = bool(configuration.radii[i] < config.MEDIAN_RADIUS_EPS)
        if is_median and i != configuration.median:
            # Tied medians share the origin; nudge them apart on screen only
            tied += 1
            angle = 2.0 * np.pi * tied / 8.0
            px += config.MEDIAN_JITTER_PX * np.cos(angle)
            py += config.MEDIAN_JITTER_PX * np.sin(angle)
        positions.append((px, py, is_median))
    return positions


def _extent(configuration: LayoutConfiguration, circles: Sequence[Tuple[float, float]]) -> float:
    radius_max = float(configuration.radii.max()) if configuration.n else 0.0
    return max([radius_max] + [r for _, r in circles])


def render_target_plot(
    configuration: LayoutConfiguration,
    centralities: CentralityVector,
    labels: Sequence[str],
    path: Path,
    size: int = config.SVG_CANVAS_SIZE,
) -> Path:
    """
    Draw a target plot as SVG.

    Four concentric reference circles sit at -ln of the 75/50/25/0 percent
    quantiles of the centralities and are labeled with those quantiles.
    Medians are filled black, every other vertex gray.

    Raises:
        OSError: path cannot be written.
    """
    circles = quartile_circles(centralities)
    canvas = _Canvas(size, _extent(configuration, circles))
    root = _svg_root(size)
    ET.SubElement(root, "rect", {"width": "100%", "height": "100%", "fill": "white"})

    rings = ET.SubElement(root, "g", {"class": "quartiles"})
    for level, (value, radius) in zip(config.QUARTILE_LEVELS, circles):
        ET.SubElement(
            rings,
            "circle",
            {
                "class": "quartile",
                "data-level": f"{level:g}",
                "cx": _num(canvas.center),
                "cy": _num(canvas.center),
                "r": _num(canvas.length(radius)),
                "fill": "none",
                "stroke": "#999999",
                "stroke-dasharray": "4 3",
            },
        )
        label = ET.SubElement(
            rings,
            "text",
            {
                "x": _num(canvas.center + canvas.length(radius) + 2.0),
                "y": _num(canvas.center - 2.0),
                "font-size": "10",
                "fill": "#666666",
            },
        )
        label.text = f"{value:.3f}"

    vertices = ET.SubElement(root, "g", {"class": "vertices"})
    for label_text, (px, py, is_median) in zip(
        labels, _marker_positions(configuration, canvas)
    ):
        ET.SubElement(
            vertices,
            "circle",
            {
                "class": "median" if is_median else "vertex",
                "data-label": label_text,
                "cx": _num(px),
                "cy": _num(py),
                "r": _num(MARKER_RADIUS),
                "fill": "black" if is_median else "#888888",
            },
        )
        text = ET.SubElement(
            vertices,
            "text",
            {"x": _num(px + MARKER_RADIUS + 1.0), "y": _num(py - 1.0), "font-size": "9"},
        )
        text.text = label_text
    return _write_svg(root, path)


def rasterize_target_plot(
    configuration: LayoutConfiguration,
    centralities: CentralityVector,
    path: Path,
    size: int = config.PNG_CANVAS_SIZE,
) -> Path:
    """Draw the target plot markers and reference circles into a PNG."""
    circles = quartile_circles(centralities)
    canvas = _Canvas(size, _extent(configuration, circles))
    image = Image.new("RGB", (size, size), "white")
    draw = ImageDraw.Draw(image)
    c = canvas.center
    for _, radius in circles:
        rr = canvas.length(radius)
        draw.ellipse((c - rr, c - rr, c + rr, c + rr), outline=(153, 153, 153))
    for px, py, is_median in _marker_positions(configuration, canvas):
        fill = (0, 0, 0) if is_median else (136, 136, 136)
        draw.ellipse(
            (px - MARKER_RADIUS, py - MARKER_RADIUS, px + MARKER_RADIUS, py + MARKER_RADIUS),
            fill=fill,
        )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    image.save(path, format="PNG")
    logger.info(f"💾 Wrote {path}")
    return path


def render_lorenz_svg(
    curves: Mapping[str, LorenzCurve],
    path: Path,
    size: int = config.SVG_CANVAS_SIZE,
    title: Optional[str] = None,
) -> Path:
    """
    Plot one or more Lorenz curves with the equality diagonal.

    The gap between the diagonal and each curve is shaded; the legend lists
    each curve's Gini coefficient.
    """
    root = _svg_root(size)
    ET.SubElement(root, "rect", {"width": "100%", "height": "100%", "fill": "white"})
    side = size - 2 * MARGIN

    def point(p: float, lp: float) -> str:
        return f"{_num(MARGIN + side * p)},{_num(MARGIN + side * (1.0 - lp))}"

    ET.SubElement(
        root,
        "rect",
        {
            "x": _num(MARGIN),
            "y": _num(MARGIN),
            "width": _num(side),
            "height": _num(side),
            "fill": "none",
            "stroke": "black",
        },
    )
    ET.SubElement(
        root,
        "line",
        {
            "class": "equality",
            "x1": _num(MARGIN),
            "y1": _num(MARGIN + side),
            "x2": _num(MARGIN + side),
            "y2": _num(MARGIN),
            "stroke": "black",
        },
    )
    for k, (name, curve) in enumerate(curves.items()):
        color = CURVE_COLORS[k % len(CURVE_COLORS)]
        points = " ".join(point(p, lp) for p, lp in zip(curve.p, curve.lp))
        ET.SubElement(
            root,
            "polygon",
            {"class": "gap", "points": points, "fill": color, "fill-opacity": "0.15"},
        )
        ET.SubElement(
            root,
            "polyline",
            {
                "class": "lorenz",
                "data-name": name,
                "points": points,
                "fill": "none",
                "stroke": color,
                "stroke-width": "1.5",
            },
        )
        legend = ET.SubElement(
            root,
            "text",
            {
                "x": _num(MARGIN + 8.0),
                "y": _num(MARGIN + 14.0 * (k + 1)),
                "font-size": "11",
                "fill": color,
            },
        )
        legend.text = f"{name}: G={curve.gini:.4f}"
    if title:
        heading = ET.SubElement(
            root, "text", {"x": _num(MARGIN), "y": _num(MARGIN - 6.0), "font-size": "12"}
        )
        heading.text = title
    return _write_svg(root, path)
