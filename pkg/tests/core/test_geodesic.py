from collections import deque

import networkx as nx
import numpy as np
import pytest

from l1_centrality.core.geodesic import (
    DistanceMatrix,
    choose_algorithm,
    distance_matrix_from_points,
    geodesic_matrix,
    validate_distance_matrix,
)
from l1_centrality.core.graph import Graph, parse_graph
from l1_centrality.exceptions import DisconnectedGraphError, GraphInputError, NumericalError


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_weighted_edges_from(g.edges)
    return h


def test_path3_distances(path3):
    dist = geodesic_matrix(path3)
    assert np.array_equal(dist.d, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


@pytest.mark.parametrize("algorithm", ["per-source", "all-pairs"])
def test_matches_networkx(random_graph, algorithm):
    for seed in range(20):
        g = random_graph(seed, n=9)
        lengths = dict(nx.all_pairs_dijkstra_path_length(to_networkx(g)))
        expected = np.array([[lengths[i][j] for j in range(g.n)] for i in range(g.n)])
        dist = geodesic_matrix(g, algorithm=algorithm)
        np.testing.assert_allclose(dist.d, expected, rtol=1e-12)


def hop_counts(g: Graph, source: int) -> list:
    hops = [-1] * g.n
    hops[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, _ in g.neighbors(u):
            if hops[v] < 0:
                hops[v] = hops[u] + 1
                queue.append(v)
    return hops


@pytest.mark.parametrize("algorithm", ["per-source", "all-pairs"])
def test_unit_weights_match_hop_counts(random_graph, algorithm):
    for seed in range(10):
        base = random_graph(seed, n=int(np.random.default_rng(seed).integers(2, 65)))
        g = Graph(base.labels, base.multiplicities, tuple((u, v, 1.0) for u, v, _ in base.edges))
        dist = geodesic_matrix(g, algorithm=algorithm)
        for source in range(g.n):
            assert dist.d[source].tolist() == hop_counts(g, source)


def test_detour_beats_direct_edge():
    g = parse_graph("A\tB\t0.5\nB\tC\t0.5\nA\tC\t2\n")
    dist = geodesic_matrix(g)
    assert dist.d[g.index("A"), g.index("C")] == 1.0


def test_algorithms_agree_and_threads_do_not_matter(random_graph):
    g = random_graph(11, n=12)
    single = geodesic_matrix(g, "per-source", threads=1)
    pooled = geodesic_matrix(g, "per-source", threads=4)
    assert np.array_equal(single.d, pooled.d)
    np.testing.assert_allclose(single.d, geodesic_matrix(g, "all-pairs").d, rtol=1e-12)


def test_weight_scaling_scales_distances(random_graph):
    g = random_graph(5, n=6)
    scaled = Graph(g.labels, g.multiplicities, tuple((u, v, 3.0 * w) for u, v, w in g.edges))
    np.testing.assert_allclose(
        geodesic_matrix(scaled).d, geodesic_matrix(g).scaled(3.0).d, rtol=1e-12
    )


def test_disconnected_names_pair():
    g = parse_graph("A\tB\nC\tD\n")
    with pytest.raises(DisconnectedGraphError) as info:
        geodesic_matrix(g)
    assert info.value.pair == ("A", "C")
    assert "--component largest" in str(info.value)


def test_single_vertex_graph():
    g = Graph(("solo",), np.ones(1), ())
    assert geodesic_matrix(g).d.tolist() == [[0.0]]


def test_choose_algorithm():
    sparse = parse_graph("A\tB\nB\tC\nC\tD\nD\tE\n")
    assert choose_algorithm(sparse) == "per-source"
    dense = parse_graph("A\tB\nB\tC\nA\tC\n")
    assert choose_algorithm(dense) == "all-pairs"
    assert choose_algorithm(dense, "per-source") == "per-source"
    with pytest.raises(GraphInputError):
        choose_algorithm(dense, "bellman-ford")


def test_validate_rejects_broken_matrices():
    with pytest.raises(NumericalError, match="triangle"):
        validate_distance_matrix(DistanceMatrix(np.array([[0, 1, 5], [1, 0, 1], [5, 1, 0]])))
    with pytest.raises(NumericalError, match="symmetric"):
        validate_distance_matrix(DistanceMatrix(np.array([[0, 1], [2, 0]])))
    with pytest.raises(NumericalError, match="diagonal"):
        validate_distance_matrix(DistanceMatrix(np.array([[1.0, 1], [1, 0]])))
    with pytest.raises(GraphInputError):
        DistanceMatrix(np.zeros((2, 3)))


def test_distance_matrix_from_points():
    dist = distance_matrix_from_points(np.array([[0.0, 0.0], [3.0, 4.0]]))
    assert dist.d.tolist() == [[0.0, 5.0], [5.0, 0.0]]
    assert dist.submatrix([1]).tolist() == [[0.0]]
