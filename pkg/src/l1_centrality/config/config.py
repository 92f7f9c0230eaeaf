"""
Configuration settings for L1 centrality analysis.
Contains numerical tolerances, optimizer defaults, output formatting and
dataset descriptions.
"""

# Numerical tolerances
# Relative tolerance on the median objective sum_j eta_j d(v_i, v_j)
MEDIAN_RTOL = 1e-9
# Relative tolerance for counting a path as a geodesic in betweenness
BETWEENNESS_TIE_RTOL = 1e-9
# Bisection width for the definition-level L1 centrality oracle
ORACLE_BISECTION_TOL = 1e-10
# Absolute slack when collecting threshold ties in a neighborhood
NEIGHBORHOOD_TIE_TOL = 1e-12
# alpha * n within this relative distance of an integer is snapped to it,
# so that e.g. 5/279 * 279 stays 5
ALPHA_SNAP_RTOL = 1e-12
# Triangle inequality slack used when validating distance matrices
TRIANGLE_RTOL = 1e-12

# Geodesic computation
GEODESIC_ALGORITHMS = ("auto", "per-source", "all-pairs")
DEFAULT_GEODESIC_ALGORITHM = "auto"
# auto uses per-source runs when |E| < n^2 / AUTO_DENSITY_DIVISOR
AUTO_DENSITY_DIVISOR = 4

# Target plot optimizer
LAYOUT_STEP_SIZE = 0.2  # Initial gradient step
LAYOUT_STEP_DECAY = 0.95  # Step multiplier applied after every iteration
LAYOUT_CONVERGENCE = 1e-4  # Stop when mag(g) drops below this
LAYOUT_MAX_ITERATIONS = 500
LAYOUT_RESTARTS = 0
# Coincident MDS points closer than this fall back to angle 2*pi*i/n
LAYOUT_DIRECTION_EPS = 1e-12
# Radius below which a vertex counts as a (tied) median when rendering
MEDIAN_RADIUS_EPS = 1e-12

# Local measures and profiles
ALPHA_GRID_STEP = 5  # Default grid {5/n, 10/n, ...}
DIVERGENCE_THRESHOLD = 0.5  # |global - local| on the uniform margin
OUTLIER_IQR_FACTOR = 1.5

# Euclidean consistency check
DEPTH_CHECK_SAMPLES = 2000
DEFAULT_SEED = 0

# Output
TABLE_PRECISION = 6
PRECISION_CHOICES = ("6", "full")
OUTPUT_FORMATS = ("tsv", "table")
SVG_CANVAS_SIZE = 640
PNG_CANVAS_SIZE = 800
MEDIAN_JITTER_PX = 1.0
QUARTILE_LEVELS = (0.75, 0.5, 0.25, 0.0)  # Circles enclose 25/50/75/100% of points
DEFAULT_THREADS = 1

# Multiplicity handling
MULTIPLICITY_MODES = ("file", "equal", "reciprocal")
COMPONENT_MODES = ("require", "largest")

# Published datasets: exported edge/vertex TSV files and their sizes
DATASETS = {
    "mcu": {
        "edges": "mcu_edges.tsv",
        "vertices": "mcu_vertices.tsv",
        "n_vertices": 32,
        "n_edges": 278,
        "description": "Marvel Cinematic Universe movies; eta = worldwide gross",
    },
    "assembly": {
        "edges": "assembly_edges.tsv",
        "vertices": "assembly_vertices.tsv",
        "n_vertices": 317,
        "n_edges": 47657,
        "description": "21st National Assembly cosponsorship; weight = 1/#bills",
    },
}
DATASET_ENV_VAR = "L1C_DATA_DIR"
DATASET_FETCH_HINT = (
    "Export the networks from the CRAN package 'L1centrality' "
    "(https://CRAN.R-project.org/package=L1centrality) as TSV files "
    "'<name>_edges.tsv' (u, v, weight) and '<name>_vertices.tsv' "
    "(label, multiplicity) into the data directory."
)

SUBCOMMANDS = (
    "centrality",
    "median",
    "neighborhood",
    "local",
    "edges",
    "profile",
    "lorenz",
    "target-plot",
    "compare",
    "depth-check",
    "outliers",
    "divergence",
)
MEASURES = ("l1", "degree", "closeness", "betweenness")
