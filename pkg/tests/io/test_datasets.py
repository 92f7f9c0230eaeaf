"""
Checks against the published MCU network.

Skipped unless the exported TSV files are available in $L1C_DATA_DIR.
"""

import os

import pytest

from l1_centrality.config import config
from l1_centrality.core.centrality import (
    betweenness_centrality,
    closeness_centrality,
    correlation,
    degree_centrality,
    graph_median,
    l1_centrality,
)
from l1_centrality.core.geodesic import geodesic_matrix
from l1_centrality.core.graph import with_multiplicities
from l1_centrality.core.heterogeneity import gini
from l1_centrality.io.file_operations import load_dataset

pytestmark = [
    pytest.mark.dataset,
    pytest.mark.skipif(
        not os.environ.get(config.DATASET_ENV_VAR),
        reason=f"{config.DATASET_ENV_VAR} is not set",
    ),
]


@pytest.fixture(scope="module")
def mcu():
    return load_dataset("mcu")


@pytest.fixture(scope="module")
def mcu_dist(mcu):
    return geodesic_matrix(mcu)


def test_published_size(mcu):
    assert (mcu.n, mcu.m) == (32, 278)


def test_graph_median(mcu, mcu_dist):
    found = graph_median(mcu_dist, mcu.multiplicities)
    assert [mcu.labels[i] for i in found.indices] == ["Avengers: Infinity War"]


@pytest.mark.parametrize(
    "measure, pearson, spearman",
    [("degree", 0.6604, 0.7400), ("betweenness", 0.8778, 0.6037), ("closeness", 0.7317, 0.7852)],
)
def test_correlation_with_classical_measures(mcu, mcu_dist, measure, pearson, spearman):
    equal = with_multiplicities(mcu, "equal")
    l1 = l1_centrality(mcu_dist, equal.multiplicities).values
    other = {
        "degree": lambda: degree_centrality(mcu),
        "betweenness": lambda: betweenness_centrality(mcu_dist, mcu),
        "closeness": lambda: closeness_centrality(mcu_dist),
    }[measure]().values
    assert correlation(l1, other, "pearson") == pytest.approx(pearson, abs=5e-4)
    assert correlation(l1, other, "spearman") == pytest.approx(spearman, abs=5e-4)


@pytest.mark.parametrize(
    "mode, expected", [("equal", 0.3339), ("file", 0.4085), ("reciprocal", 0.2943)]
)
def test_gini_of_l1_centrality(mcu, mcu_dist, mode, expected):
    weighted = with_multiplicities(mcu, mode)
    values = l1_centrality(mcu_dist, weighted.multiplicities).values
    assert gini(values) == pytest.approx(expected, abs=5e-4)
