import networkx as nx
import numpy as np
import pytest

from l1_centrality.core.centrality import (
    betweenness_centrality,
    closeness_centrality,
    correlation,
    degree_centrality,
    distance_outliers,
    graph_median,
    l1_centrality,
    l1_centrality_oracle,
)
from l1_centrality.core.geodesic import DistanceMatrix, geodesic_matrix
from l1_centrality.core.graph import Graph, parse_graph
from l1_centrality.exceptions import GraphInputError, NumericalError


def l1(g: Graph) -> np.ndarray:
    return l1_centrality(geodesic_matrix(g), g.multiplicities).values


# --- hand-derived fixtures ---------------------------------------------


def test_path3_l1(path3):
    np.testing.assert_allclose(l1(path3), [2 / 3, 1.0, 2 / 3], atol=1e-12)


def test_star_l1(star):
    np.testing.assert_allclose(l1(star), [1.0, 0.5, 0.5, 0.5], atol=1e-12)


def test_complete_graph_all_medians(k3):
    dist = geodesic_matrix(k3)
    assert graph_median(dist, k3.multiplicities).indices == (0, 1, 2)
    assert l1(k3).tolist() == [1.0, 1.0, 1.0]


def test_path3_medians(path3):
    dist = geodesic_matrix(path3)
    found = graph_median(dist, [1, 1, 1])
    assert found.indices == (1,)
    assert found.objective == 2.0
    assert graph_median(dist, [5, 1, 1]).indices == (0,)


def test_single_vertex_is_central():
    g = Graph(("solo",), np.ones(1), ())
    assert l1(g).tolist() == [1.0]


def test_multiplicity_shape_checked(path3):
    with pytest.raises(GraphInputError):
        l1_centrality(geodesic_matrix(path3), [1, 1])


# --- properties on random graphs ----------------------------------------


@pytest.mark.slow
def test_matches_definition_oracle(random_graph):
    for seed in range(200):
        g = random_graph(seed)
        dist = geodesic_matrix(g)
        fast = l1_centrality(dist, g.multiplicities).values
        slow = [l1_centrality_oracle(dist, g.multiplicities, k) for k in range(g.n)]
        np.testing.assert_allclose(fast, slow, atol=1e-8, err_msg=f"seed {seed}")


def test_scale_invariance(random_graph):
    for seed in range(30):
        g = random_graph(seed)
        dist = geodesic_matrix(g)
        base = l1_centrality(dist, g.multiplicities).values
        scaled = l1_centrality(dist.scaled(7.5), 0.3 * g.multiplicities).values
        np.testing.assert_allclose(scaled, base, atol=1e-12)


def test_central_exactly_at_medians(random_graph):
    for seed in range(60):
        g = random_graph(seed, n=int(np.random.default_rng(seed).integers(2, 13)))
        dist = geodesic_matrix(g)
        c = l1_centrality(dist, g.multiplicities).values
        medians = set(graph_median(dist, g.multiplicities).indices)
        assert {i for i in range(g.n) if c[i] >= 1 - 1e-9} == medians


def test_lower_bound_and_range(random_graph):
    for seed in range(60):
        g = random_graph(seed)
        c = l1(g)
        share = g.multiplicities / g.multiplicities.sum()
        assert np.all(c >= np.minimum(2 * share, 1.0) - 1e-12)
        assert np.all(c <= 1.0)
        assert c.max() == 1.0


def test_pendant_edge_limit():
    # v0 hangs off a triangle; C(v0) must stay at 2*eta0/eta. however far it moves
    eta = np.array([1.0, 2.0, 1.5, 1.0])
    bound = min(2 * eta[0] / eta.sum(), 1.0)
    previous = None
    for t in (1e2, 1e4, 1e6):
        edges = ((0, 1, t), (1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0))
        c0 = l1(Graph(("p", "a", "b", "c"), eta, edges))[0]
        if previous is not None:
            assert abs(c0 - bound) <= abs(previous - bound) + 1e-12
        previous = c0
    assert abs(previous - bound) < 1e-3


# --- classical measures -------------------------------------------------


def test_degree_and_closeness(path3, k3):
    assert degree_centrality(path3).values.tolist() == [1.0, 2.0, 1.0]
    np.testing.assert_allclose(
        closeness_centrality(geodesic_matrix(path3)).values, [1 / 3, 1 / 2, 1 / 3]
    )
    np.testing.assert_allclose(closeness_centrality(geodesic_matrix(k3)).values, [0.5] * 3)
    with pytest.raises(GraphInputError):
        closeness_centrality(DistanceMatrix(np.zeros((1, 1))))


def test_closeness_scales_inversely(path3):
    dist = geodesic_matrix(path3)
    np.testing.assert_allclose(
        closeness_centrality(dist.scaled(4.0)).values,
        closeness_centrality(dist).values / 4.0,
    )


@pytest.mark.parametrize(
    "edges, expected",
    [
        ("A\tB\nB\tC\n", [0.0, 1.0, 0.0]),
        ("A\tB\nB\tC\nA\tC\n", [0.0, 0.0, 0.0]),
        ("A\tB\nB\tC\nC\tD\nD\tA\n", [0.5, 0.5, 0.5, 0.5]),
    ],
)
def test_betweenness_fixtures(edges, expected):
    g = parse_graph(edges)
    values = betweenness_centrality(geodesic_matrix(g), g).values
    np.testing.assert_allclose(values, expected, atol=1e-12)


def test_betweenness_matches_networkx(random_graph):
    for seed in range(25):
        g = random_graph(seed, n=10, extra_edge_prob=0.4)
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_weighted_edges_from(g.edges)
        expected = nx.betweenness_centrality(h, weight="weight", normalized=False)
        values = betweenness_centrality(geodesic_matrix(g), g, threads=3).values
        np.testing.assert_allclose(values, [expected[i] for i in range(g.n)], atol=1e-9)


def test_betweenness_counts_tied_geodesics():
    # Two routes of length 3 from A to D whose float sums may differ in the last bit
    g = parse_graph("A\tB\t0.1\nB\tD\t2.9\nA\tC\t1.7\nC\tD\t1.3\n")
    values = betweenness_centrality(geodesic_matrix(g), g).values
    # vertex order A, B, D, C; B-C runs through A
    np.testing.assert_allclose(values, [1.0, 0.5, 0.0, 0.5], atol=1e-12)


# --- correlation and outliers -------------------------------------------


def test_correlation():
    x = [1.0, 2.0, 3.0, 5.0]
    assert correlation(x, x) == pytest.approx(1.0)
    assert correlation(x, x[::-1], "spearman") == pytest.approx(-1.0)
    with pytest.raises(NumericalError):
        correlation(x, [2.0] * 4)
    with pytest.raises(GraphInputError):
        correlation(x, x[:3])
    with pytest.raises(GraphInputError):
        correlation(x, x, "kendall")


def test_distance_outliers_flags_far_vertex():
    g = parse_graph("A\tB\nB\tC\nC\tA\nA\tD\nB\tD\nC\tE\t40\n")
    mean, flags = distance_outliers(geodesic_matrix(g))
    assert flags.tolist() == [False, False, False, False, True]
    assert mean[4] > mean[:4].max()
