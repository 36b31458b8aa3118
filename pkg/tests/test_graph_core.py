import math

import numpy as np
import pytest

from swdom import (
    UNREACHABLE,
    DirectedGraph,
    Graph,
    bfs_distance,
    degree_stats,
    gen_gnp,
    load_edge_list,
    save_edge_list,
    three_far_set,
)


def test_graph_basic_accessors():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.vertex_count == 4
    assert g.edge_count() == 3
    assert list(g.neighbors_of(1)) == [0, 2]
    assert g.degree_of(0) == 1
    # undirected: influence is the same adjacency
    assert list(g.influence_of(2)) == list(g.neighbors_of(2))


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(3, [(-1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])


def test_graph_deduplicates_edges():
    g = Graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.edge_count() == 1


def test_factories():
    assert Graph.empty(5).edge_count() == 0
    assert Graph.complete(4).edge_count() == 6
    assert Graph.cycle(5).edge_count() == 5
    assert Graph.path(5).edge_count() == 4
    assert degree_stats(Graph.complete(4)) == (3, 3, [3, 3, 3, 3])
    with pytest.raises(ValueError):
        Graph.cycle(2)


def test_bfs_distance():
    p = Graph.path(5)
    assert bfs_distance(p, 0, 4) == 4
    assert bfs_distance(p, 2, 2) == 0
    g = Graph(4, [(0, 1)])
    assert bfs_distance(g, 0, 3) == UNREACHABLE
    assert math.isinf(UNREACHABLE)
    with pytest.raises(ValueError):
        bfs_distance(p, 0, 9)


def test_three_far_set_known_graphs():
    assert three_far_set(Graph.path(5)) == (0, 3)
    assert three_far_set(Graph.cycle(5)) == (0,)
    assert three_far_set(Graph.complete(5)) == (0,)


def test_three_far_set_is_pairwise_distant():
    g = gen_gnp(40, 0.1, seed=5)
    t = three_far_set(g)
    assert len(t) >= 1
    for i, u in enumerate(t):
        for v in t[i + 1:]:
            assert bfs_distance(g, u, v) >= 3


def test_gen_gnp_extremes_and_determinism():
    assert gen_gnp(6, 0.0, seed=1).edge_count() == 0
    assert gen_gnp(6, 1.0, seed=1).edge_count() == 15
    a = gen_gnp(25, 0.3, seed=42)
    b = gen_gnp(25, 0.3, seed=42)
    assert a.edges() == b.edges()
    assert a.edges() != gen_gnp(25, 0.3, seed=43).edges()
    with pytest.raises(ValueError):
        gen_gnp(5, 1.5, seed=0)


def test_directed_graph_orientation():
    dg = DirectedGraph([[1], [2], [0]])
    assert dg.vertex_count == 3
    assert list(dg.neighbors_of(0)) == [1]
    assert list(dg.influence_of(0)) == [2]
    assert dg.degree_of(1) == 1


def test_edge_list_round_trip(tmp_path):
    g = gen_gnp(15, 0.4, seed=9)
    path = tmp_path / "g.txt"
    save_edge_list(g, path)
    back = load_edge_list(path, n=15)
    assert back.edges() == g.edges()
    assert back.vertex_count == 15


def test_edge_list_infers_size(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("0 1\n2 3\n")
    g = load_edge_list(path)
    assert g.vertex_count == 4
    assert g.edge_count() == 2


def test_edge_list_reports_bad_lines(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("0 1\n1 2 3\n")
    with pytest.raises(ValueError, match="line 2"):
        load_edge_list(path)
    path.write_text("0 one\n")
    with pytest.raises(ValueError, match="line 1"):
        load_edge_list(path)


def test_neighbor_arrays_are_sorted():
    g = Graph(5, [(3, 0), (0, 4), (0, 1)])
    assert list(g.neighbors_of(0)) == [1, 3, 4]
    assert g.neighbors_of(0).dtype == np.int64
