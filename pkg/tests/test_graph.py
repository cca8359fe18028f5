from __future__ import annotations

import numpy as np
import pytest

from lobbygraph.graph import Graph, GraphError, LabelMap, build_graph

from oracles import er_graph


def test_build_dedups_and_drops_self_loops():
    g, lm = build_graph([("A", "B"), ("A", "B"), ("B", "B")])
    assert g.node_count == 2
    assert g.edge_count == 1
    assert list(g.neighbors(lm.id_of("A"))) == [lm.id_of("B")]


def test_build_interaction_pairs():
    g, lm = build_graph([("YFL039C", "YBR243C"), ("YFL039C", "YKL052C")])
    assert (g.node_count, g.edge_count) == (3, 2)
    assert g.out_degree(lm.id_of("YFL039C")) == 2


def test_build_directed_outlinks():
    g, lm = build_graph([("set", "assign"), ("set", "assigned")], directed=True)
    assert g.out_degree(lm.id_of("set")) == 2
    assert g.out_degree(lm.id_of("assign")) == 0
    assert list(g.in_neighbors(lm.id_of("assign"))) == [lm.id_of("set")]


def test_node_ids_follow_first_appearance():
    _, lm = build_graph([("b", "a"), ("c", "a")])
    assert [lm.label_of(i) for i in range(3)] == ["b", "a", "c"]


def test_empty_edge_list_rejected():
    with pytest.raises(GraphError, match="empty graph"):
        build_graph([])


def test_empty_label_rejected():
    with pytest.raises(GraphError):
        build_graph([("", "x")])


def test_star_degrees():
    g, lm = build_graph([("c", f"l{i}") for i in range(4)])
    assert g.out_degree(lm.id_of("c")) == 4
    assert g.out_degree(lm.id_of("l0")) == 1


def test_triangle_neighbors():
    g, lm = build_graph([("a", "b"), ("b", "c"), ("c", "a")])
    for v in range(3):
        assert set(map(int, g.neighbors(v))) == {0, 1, 2} - {v}


def test_isolated_node_has_no_neighbors():
    g = Graph.from_edge_ids(3, [(0, 1)])
    assert list(g.neighbors(2)) == []
    assert g.out_degree(2) == 0


def test_directed_neighbors_and_sink():
    g, lm = build_graph([("A", "B"), ("A", "C")], directed=True)
    assert list(g.neighbors(lm.id_of("A"))) == [lm.id_of("B"), lm.id_of("C")]
    assert list(g.neighbors(lm.id_of("B"))) == []


def test_invalid_node_id_rejected():
    g = Graph.from_edge_ids(2, [(0, 1)])
    with pytest.raises(GraphError):
        g.neighbors(2)
    with pytest.raises(GraphError):
        g.out_degree(-1)


def test_edge_endpoint_out_of_range_rejected():
    with pytest.raises(GraphError):
        Graph.from_edge_ids(2, [(0, 2)])


@pytest.mark.parametrize("seed", range(8))
def test_undirected_handshake_and_sorted_adjacency(seed):
    g = er_graph(20 + seed, 0.2, seed=seed)
    degrees = g.out_degrees()
    assert int(degrees.sum()) == 2 * g.edge_count
    for v in range(g.node_count):
        nbrs = g.neighbors(v)
        assert np.all(np.diff(nbrs) > 0)
        for u in map(int, nbrs):
            assert v in set(map(int, g.neighbors(u)))


@pytest.mark.parametrize("seed", range(4))
def test_directed_arc_sum(seed):
    g = er_graph(20, 0.2, seed=seed, directed=True)
    assert int(g.out_degrees().sum()) == g.edge_count


@pytest.mark.parametrize("directed", [False, True])
def test_round_trip_through_edge_list(directed):
    g, lm = build_graph(
        [("w", "x"), ("x", "y"), ("y", "w"), ("y", "z"), ("w", "z")], directed=directed
    )
    labeled = [(lm.label_of(u), lm.label_of(v)) for u, v in g.edges()]
    g2, lm2 = build_graph(labeled, directed=directed)
    assert g2.node_count == g.node_count
    assert g2.edge_count == g.edge_count
    # Same labeled adjacency, independent of any id reassignment.
    adj1 = {
        lm.label_of(v): {lm.label_of(int(u)) for u in g.neighbors(v)}
        for v in range(g.node_count)
    }
    adj2 = {
        lm2.label_of(v): {lm2.label_of(int(u)) for u in g2.neighbors(v)}
        for v in range(g2.node_count)
    }
    assert adj1 == adj2


def test_labelmap_round_trip():
    lm = LabelMap.from_labels(["alpha", "beta", "gamma"])
    for i in range(3):
        assert lm.id_of(lm.label_of(i)) == i
    assert len(lm) == 3
    assert "beta" in lm


def test_labelmap_unknown_label():
    lm = LabelMap.from_labels(["alpha"])
    with pytest.raises(GraphError):
        lm.id_of("nope")
    with pytest.raises(GraphError):
        lm.label_of(5)


def test_adjacency_arrays_read_only():
    g = Graph.from_edge_ids(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        g.indices[0] = 0
