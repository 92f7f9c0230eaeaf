import numpy as np
import pytest

from l1_centrality.core.graph import (
    Graph,
    connectivity,
    induced_subgraph,
    largest_component,
    parse_graph,
    serialize_graph,
    with_multiplicities,
)
from l1_centrality.exceptions import GraphInputError


def test_parse_edges_only_defaults(path3):
    assert path3.labels == ("A", "B", "C")
    assert path3.m == 2
    assert np.array_equal(path3.multiplicities, np.ones(3))
    assert path3.edges == ((0, 1, 1.0), (1, 2, 1.0))


def test_parse_with_vertices_and_weights():
    g = parse_graph("# comment\nA\tB\t2.5\n\nB\tC\t0.5\n", "C\t3\nB\t1\nA\t0\n")
    assert g.labels == ("C", "B", "A")
    assert list(g.multiplicities) == [3.0, 1.0, 0.0]
    assert g.neighbors(g.index("B")) == ((2, 2.5), (0, 0.5))
    assert g.degree(g.index("B")) == 2


@pytest.mark.parametrize(
    "edges, message",
    [
        ("A\tB\t0\n", "nonpositive weight"),
        ("A\tB\t-1\n", "nonpositive weight"),
        ("A\tB\tx\n", "malformed weight"),
        ("A\tB\tnan\n", "finite"),
        ("A\tA\n", "self-loop"),
        ("A\n", "expected"),
    ],
)
def test_parse_rejects_bad_edges_with_line_number(edges, message):
    with pytest.raises(GraphInputError) as info:
        parse_graph("X\tY\n" + edges)
    assert message in str(info.value)
    assert info.value.line == 2
    assert str(info.value).startswith("edges:2:")


def test_duplicate_edge_reports_first_line():
    with pytest.raises(GraphInputError, match="first given on line 1"):
        parse_graph("A\tB\nB\tA\t2\n")


def test_unknown_label_with_vertex_file():
    with pytest.raises(GraphInputError, match="unknown vertex label 'Z'"):
        parse_graph("A\tZ\n", "A\t1\n")


def test_negative_multiplicity_rejected():
    with pytest.raises(GraphInputError, match="negative multiplicity") as info:
        parse_graph("A\tB\n", "A\t1\nB\t-2\n", vertex_source="v.tsv")
    assert str(info.value).startswith("v.tsv:2:")


def test_zero_total_multiplicity_rejected():
    with pytest.raises(GraphInputError, match="total multiplicity"):
        parse_graph("A\tB\n", "A\t0\nB\t0\n")


def test_graph_is_immutable(path3):
    with pytest.raises(ValueError):
        path3.multiplicities[0] = 5.0


def test_serialize_round_trip(random_graph):
    g = random_graph(3, n=7)
    assert parse_graph(*serialize_graph(g)) == g


def test_connectivity_components():
    g = parse_graph("A\tB\nC\tD\nD\tE\n")
    report = connectivity(g)
    assert not report.connected
    assert report.components == ((0, 1), (2, 3, 4))


def reachability(g: Graph) -> np.ndarray:
    """Boolean transitive closure of the adjacency relation, self included."""
    reach = np.eye(g.n, dtype=bool)
    for u, v, _ in g.edges:
        reach[u, v] = reach[v, u] = True
    for k in range(g.n):
        reach |= reach[:, [k]] & reach[[k], :]
    return reach


def test_connectivity_matches_reachability():
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        edges = tuple(
            (u, v, 1.0)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.25
        )
        g = Graph(tuple(f"v{i}" for i in range(n)), np.ones(n), edges)
        reach = reachability(g)
        report = connectivity(g)
        assert report.connected == bool(reach.all())
        assert sorted(v for part in report.components for v in part) == list(range(n))
        for part in report.components:
            for u in part:
                assert set(np.flatnonzero(reach[u])) == set(part)


def test_single_vertex_without_edges_is_connected():
    report = connectivity(Graph(("solo",), np.ones(1), ()))
    assert report.connected
    assert report.components == ((0,),)


def test_largest_component_and_induced_subgraph():
    g = parse_graph("A\tB\nC\tD\nD\tE\t2\n", "A\t1\nB\t1\nC\t2\nD\t3\nE\t4\n")
    big = largest_component(g)
    assert big.labels == ("C", "D", "E")
    assert list(big.multiplicities) == [2.0, 3.0, 4.0]
    assert big.edges == ((0, 1, 1.0), (1, 2, 2.0))
    assert largest_component(big) is big

    sub = induced_subgraph(g, ["E", "C"])
    assert sub.labels == ("C", "E")
    assert sub.m == 0


def test_induced_subgraph_errors(path3):
    with pytest.raises(GraphInputError):
        induced_subgraph(path3, [])
    with pytest.raises(GraphInputError, match="unknown vertex label"):
        induced_subgraph(path3, ["Q"])


def test_with_multiplicities_modes():
    g = parse_graph("A\tB\n", "A\t2\nB\t4\n")
    assert with_multiplicities(g, "file") is g
    assert list(with_multiplicities(g, "equal").multiplicities) == [1.0, 1.0]
    assert list(with_multiplicities(g, "reciprocal").multiplicities) == [0.5, 0.25]
    with pytest.raises(GraphInputError):
        with_multiplicities(parse_graph("A\tB\n", "A\t0\nB\t1\n"), "reciprocal")
    with pytest.raises(GraphInputError):
        with_multiplicities(g, "bogus")


def test_direct_construction_validates():
    with pytest.raises(GraphInputError, match="duplicate edge"):
        Graph(("A", "B"), np.ones(2), ((0, 1, 1.0), (1, 0, 2.0)))
    with pytest.raises(GraphInputError, match="no vertices"):
        Graph((), np.ones(0), ())
