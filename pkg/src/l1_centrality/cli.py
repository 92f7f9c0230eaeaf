"""
CLI entry point for L1 centrality analysis.
"""

import argparse
import logging
import os
import sys
from fractions import Fraction
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, NoReturn, Optional, Sequence, Tuple

import numpy as np

from l1_centrality.config import config
from l1_centrality.exceptions import GraphInputError, L1CentralityError, NumericalError
from l1_centrality.io import file_operations
from l1_centrality.io.logging_config import PACKAGE_LOGGER
from l1_centrality.pipeline import AnalysisPipeline, RunSpec

logger = logging.getLogger(PACKAGE_LOGGER)

TOLERANCES = f"""\
numerical tolerances:
  graph median          relative {config.MEDIAN_RTOL:g} on sum_j eta_j d(v_i, v_j)
  betweenness geodesics relative {config.BETWEENNESS_TIE_RTOL:g} on path length
  neighborhood ties     absolute {config.NEIGHBORHOOD_TIE_TOL:g} on symmetrized score
  neighborhood size     ceil(alpha * n), snapped within relative {config.ALPHA_SNAP_RTOL:g}
                        of an integer, at least 1
  triangle inequality   relative {config.TRIANGLE_RTOL:g} when validating distances
  oracle bisection      width {config.ORACLE_BISECTION_TOL:g} (tests only)
  target plot           step {config.LAYOUT_STEP_SIZE:g}, decay {config.LAYOUT_STEP_DECAY:g},
                        stop when mag(g) < {config.LAYOUT_CONVERGENCE:g} or after
                        {config.LAYOUT_MAX_ITERATIONS} iterations

exit status: 0 success, 1 input error, 2 numerical failure
"""


def setup_logging(
    log_level: Optional[str] = None, log_file: Optional[str] = None
) -> None:
    """
    Set up logging with a console handler and an optional rotating file handler.
    Log level can be set via argument, environment variable LOG_LEVEL, or defaults to INFO.
    This function reconfigures the existing logger.
    """
    if logger.hasHandlers():
        for h in logger.handlers[:]:
            logger.removeHandler(h)
    env_level = os.environ.get("LOG_LEVEL", "INFO").upper()
    level = (log_level or env_level or "INFO").upper()
    level_value = getattr(logging, level, logging.INFO)
    logger.setLevel(level_value)
    formatter = logging.Formatter(
        "%(asctime)s [%(levelname)s] %(module)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    # stdout carries results
    ch = logging.StreamHandler(sys.stderr)
    ch.setFormatter(formatter)
    ch.setLevel(level_value)
    logger.addHandler(ch)
    if not log_file:
        return
    try:
        fh = RotatingFileHandler(
            log_file, maxBytes=2 * 1024 * 1024, backupCount=3, encoding="utf-8"
        )
        fh.setFormatter(formatter)
        fh.setLevel(level_value)
        logger.addHandler(fh)
    except Exception as e:
        logger.warning(f"Could not set up file logging: {e}")


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are input errors (exit status 1)."""

    def error(self, message: str) -> NoReturn:
        raise GraphInputError(f"{self.prog}: {message}")


def parse_alpha(text: str) -> float:
    """Accept decimals or fractions such as '2/3'."""
    try:
        value = float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid alpha '{text}'") from None
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1], got {text}")
    return value


def parse_alpha_list(text: str) -> Tuple[float, ...]:
    return tuple(parse_alpha(part) for part in text.split(",") if part.strip())


def parse_grid(text: str) -> Optional[Tuple[float, ...]]:
    return None if text == "auto" else parse_alpha_list(text)


def parse_measures(text: str) -> Tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    for name in names:
        if name not in config.MEASURES:
            raise argparse.ArgumentTypeError(
                f"unknown measure '{name}' (choose from {', '.join(config.MEASURES)})"
            )
    return names


def _common_options() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    group = common.add_argument_group("input")
    group.add_argument("-g", "--graph", type=Path, help="Edge list TSV: u<TAB>v[<TAB>weight]")
    group.add_argument(
        "-V", "--vertices", type=Path, help="Vertex TSV: label<TAB>multiplicity"
    )
    group.add_argument(
        "--dataset", choices=tuple(config.DATASETS), help="Load a published network"
    )
    group.add_argument(
        "--data-dir",
        type=Path,
        help=f"Directory holding exported datasets (default: ${config.DATASET_ENV_VAR})",
    )
    group.add_argument(
        "--multiplicity",
        choices=config.MULTIPLICITY_MODES,
        default="file",
        help="Use multiplicities from the file, all equal, or their reciprocals",
    )
    group.add_argument(
        "--component",
        choices=config.COMPONENT_MODES,
        default="require",
        help="Require a connected graph or analyse its largest component",
    )
    group.add_argument("--keep", type=Path, help="File of vertex labels to keep")
    group.add_argument(
        "--algorithm",
        choices=config.GEODESIC_ALGORITHMS,
        default=config.DEFAULT_GEODESIC_ALGORITHM,
        help="Shortest-path strategy (auto: per-source when |E| < n^2/4)",
    )
    group.add_argument(
        "--threads",
        type=int,
        default=config.DEFAULT_THREADS,
        help="Worker threads (0 = all CPUs); output does not depend on it",
    )
    output = common.add_argument_group("output")
    output.add_argument(
        "--precision",
        choices=config.PRECISION_CHOICES,
        default="6",
        help="Decimal places in tables, or 'full' for round-trip floats",
    )
    output.add_argument(
        "--format",
        dest="fmt",
        choices=config.OUTPUT_FORMATS,
        default="tsv",
        help="TSV (default) or an aligned console table",
    )
    output.add_argument("-o", "--out", type=Path, help="Output file (default: stdout)")
    output.add_argument("--dump-dist", type=Path, help="Also write the distance matrix")
    output.add_argument(
        "--seed", type=int, default=config.DEFAULT_SEED, help="Seed for randomized options"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="l1centrality",
        description="L1 centrality, local L1 centrality and target plots for graphs",
        epilog=TOLERANCES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default=None,
        help="Set log level (DEBUG, INFO, WARNING, ERROR, CRITICAL). Overrides LOG_LEVEL env var.",
    )
    parser.add_argument("--log-file", type=str, default=None, help="Rotating log file")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    common = [_common_options()]

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(
            name,
            parents=common,
            help=help_text,
            description=help_text,
            epilog=TOLERANCES,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

    p = add("centrality", "Global L1, degree, closeness and betweenness centrality")
    p.add_argument("--measures", type=parse_measures, default=config.MEASURES)
    p.add_argument(
        "--uniform-margin", action="store_true", help="Report rank/n instead of values"
    )

    p = add("median", "Graph median, or the local median of --vertex at --alpha")
    p.add_argument("--vertex")
    p.add_argument("--alpha", type=parse_alpha, default=1.0)

    p = add("neighborhood", "L1 centrality-based neighborhood of a vertex")
    p.add_argument("--vertex", required=True)
    p.add_argument("--alpha", type=parse_alpha, required=True)

    p = add("local", "Local L1 centrality at one or more locality levels")
    p.add_argument("--alpha", type=parse_alpha_list, required=True, help="e.g. 0.1,0.5,1")

    p = add("edges", "DOT digraph linking each vertex to its local medians")
    p.add_argument("--alpha", type=parse_alpha, required=True)

    p = add("profile", "Mean-centered uniform-margin local centrality over an alpha grid")
    p.add_argument("--grid", type=parse_grid, default=None, help="'auto' or a list")
    p.add_argument("--grid-step", type=int, default=config.ALPHA_GRID_STEP)

    p = add("lorenz", "Lorenz curve knots and Gini coefficient")
    p.add_argument("--measure", choices=config.MEASURES, default="l1")
    p.add_argument("--alpha", type=parse_alpha, default=1.0, help="Local L1 when < 1")
    p.add_argument("--groups", type=Path, help="label<TAB>group file for per-group Gini")
    p.add_argument("--svg", type=Path, help="Also draw the curve")

    p = add("target-plot", "Radially constrained layout; --out names the SVG")
    p.add_argument("--coords", type=Path, help="Write label, r, theta, x, y")
    p.add_argument("--png", type=Path, help="Also rasterize to PNG")
    p.add_argument("--restarts", type=int, default=config.LAYOUT_RESTARTS)
    p.add_argument(
        "--force", action="store_true", help="Allow non-uniform multiplicities"
    )

    add("compare", "All measures raw and on the uniform margin, with correlations")

    p = add("depth-check", "Euclidean L1 centrality against L1 depth")
    p.add_argument("--points", type=Path, help="Point TSV (default: unit-disk sample)")
    p.add_argument("--samples", type=int, default=config.DEPTH_CHECK_SAMPLES)
    p.add_argument("--focal", type=int, default=0)

    p = add("outliers", "Vertices with unusually large mean distance")
    p.add_argument("--factor", type=float, default=config.OUTLIER_IQR_FACTOR)

    p = add("divergence", "Global versus local L1 centrality on the uniform margin")
    p.add_argument("--alpha", type=parse_alpha, required=True)
    p.add_argument("--threshold", type=float, default=config.DIVERGENCE_THRESHOLD)
    return parser


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    alpha = getattr(args, "alpha", 1.0)
    alphas = alpha if isinstance(alpha, tuple) else (alpha,)
    measures = getattr(args, "measures", config.MEASURES)
    if args.subcommand == "lorenz":
        measures = (args.measure,)
    return RunSpec(
        subcommand=args.subcommand,
        graph=args.graph,
        vertices=args.vertices,
        dataset=args.dataset,
        data_dir=args.data_dir,
        multiplicity=args.multiplicity,
        component=args.component,
        keep=args.keep,
        algorithm=args.algorithm,
        threads=args.threads,
        precision=args.precision,
        fmt=args.fmt,
        out=args.out,
        dump_dist=args.dump_dist,
        seed=args.seed,
        measures=measures,
        uniform_margin=getattr(args, "uniform_margin", False),
        vertex=getattr(args, "vertex", None),
        alphas=alphas,
        grid=getattr(args, "grid", None),
        grid_step=getattr(args, "grid_step", config.ALPHA_GRID_STEP),
        threshold=getattr(args, "threshold", config.DIVERGENCE_THRESHOLD),
        outlier_factor=getattr(args, "factor", config.OUTLIER_IQR_FACTOR),
        groups=getattr(args, "groups", None),
        svg=getattr(args, "svg", None),
        png=getattr(args, "png", None),
        coords=getattr(args, "coords", None),
        restarts=getattr(args, "restarts", config.LAYOUT_RESTARTS),
        force=getattr(args, "force", False),
        points=getattr(args, "points", None),
        samples=getattr(args, "samples", config.DEPTH_CHECK_SAMPLES),
        focal=getattr(args, "focal", 0),
    )


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one subcommand and return the exit status."""
    try:
        args = build_parser().parse_args(argv)
        setup_logging(log_level=args.log_level, log_file=args.log_file)
        pipeline = AnalysisPipeline(config=config, file_ops=file_operations)
        pipeline.run(spec_from_args(args))
    # LinAlgError subclasses ValueError, so it is matched first
    except (NumericalError, FloatingPointError, np.linalg.LinAlgError) as e:
        logger.error(f"❌ Numerical failure: {e}")
        return 2
    except (GraphInputError, ValueError, OSError) as e:
        logger.error(f"❌ {e}")
        return 1
    except L1CentralityError as e:
        logger.error(f"❌ {e}")
        return 1
    return 0


def cli_main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_cli(argv))


if __name__ == "__main__":
    cli_main()
