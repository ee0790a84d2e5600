"""Signed-graph basics: parsing, switching, balance, connectivity, minors."""

import random

import pytest

from helpers import random_connected_graph
from sgflow.core import (MINUS, PLUS, EdgeCut, Orientation, SignedGraph,
                         contract, delete_edges, delta, edge_connectivity,
                         format_sg, is_balanced, is_cyclically_k_edge_connected,
                         is_k_unbalanced, min_negative_edges, parse_sg,
                         signatures_equivalent, suppress_degree_two,
                         switch_at, switch_on_set, uncontract_edges)
from sgflow.generators import k4, k4_negative_triangle, negsun, petersen
from sgflow.structures import cycle_sign


def test_parse_format_round_trip():
    g = k4_negative_triangle()
    assert parse_sg(format_sg(g)).edges == g.edges


def test_parse_rejects_bad_input_with_line_number():
    with pytest.raises(ValueError, match="line"):
        parse_sg("sg 3 1\ne 1 2 ?\n")
    with pytest.raises(ValueError):
        parse_sg("sg 3 2\ne 1 2 +\n")  # missing an edge line


def test_halfedge_indexing():
    g = SignedGraph(3, ((0, 1, PLUS), (1, 2, MINUS)))
    assert g.halfedge_vertex(0) == 0 and g.halfedge_vertex(1) == 1
    assert g.halfedge_vertex(2) == 1 and g.halfedge_vertex(3) == 2
    assert g.ends(1) == (1, 2) and g.sigma(1) == MINUS


def test_default_orientation_encodes_signs():
    g = k4_negative_triangle()
    tau = Orientation.default(g)
    for e in range(g.m):
        assert tau(2 * e) * tau(2 * e + 1) == -g.sigma(e)
    tau.check(g)


def test_switch_at_is_an_involution():
    g = k4_negative_triangle()
    assert switch_at(switch_at(g, 1), 1).edges == g.edges


def test_switching_preserves_cycle_signs():
    g = negsun(4)
    g2 = switch_on_set(g, {0, 2, 5})
    assert cycle_sign(g2, range(4)) == cycle_sign(g, range(4))


def test_switched_signatures_are_equivalent():
    g = petersen()
    g2 = switch_on_set(g, {0, 3, 7, 8})
    res = signatures_equivalent(g, g2)
    assert res.equivalent
    assert switch_on_set(g, res.switching_set).edges == g2.edges


def test_balance_verdicts():
    assert is_balanced(petersen(all_positive=True)).balanced
    res = is_balanced(negsun(4))
    assert not res.balanced
    assert cycle_sign(negsun(4), res.negative_cycle) == MINUS


def test_min_negative_edges_examples():
    assert min_negative_edges(k4(), budget=2) == 0
    assert min_negative_edges(k4_negative_triangle(), budget=2) == 2
    assert min_negative_edges(petersen(), budget=2) is None  # more than 2
    assert is_k_unbalanced(petersen(), 2)
    assert not is_k_unbalanced(k4(), 1)


def test_edge_connectivity_values():
    assert edge_connectivity(petersen()) == 3
    assert edge_connectivity(negsun(4)) == 1
    assert edge_connectivity(k4()) == 3


def test_cyclic_edge_connectivity():
    assert is_cyclically_k_edge_connected(petersen(all_positive=True), 4)


def test_delta_and_edge_cut():
    g = k4()
    side = {0, 1}
    cut = EdgeCut.from_side(g, side)
    cut.validate(g)
    assert cut.cut_edges == frozenset(delta(g, side))
    # K4: each of 0,1 has two edges leaving {0,1}
    assert len(cut.cut_edges) == 4


def test_contract_positive_edge_merges_ends():
    g = k4()
    res = contract(g, 0)
    assert res.graph.n == 3 and res.graph.m == 5
    # the two former (0,3),(1,3) edges become parallel
    assert len(res.graph.edges_between(res.vertex_map[0], res.vertex_map[3])) == 2


def test_delete_edges_reindexes_with_edge_map():
    g = k4_negative_triangle()
    res = delete_edges(g, {1, 3})
    assert res.graph.m == 4
    for e in range(g.m):
        ne = res.edge_map[e]
        if e in (1, 3):
            assert ne is None
        else:
            assert res.graph.edges[ne] == g.edges[e]


def test_uncontract_then_contract_restores_graph():
    rng = random.Random(11)
    for _ in range(50):
        g = random_connected_graph(rng)
        v = rng.randrange(g.n)
        inc = [e for e in g.incident_edges(v) if not g.is_loop(e)]
        if g.degree(v) < 4 or len(inc) < 2:
            continue
        e, f = rng.sample(inc, 2)
        res = uncontract_edges(g, v, e, f)
        back = contract(res.graph, res.new_edge).graph
        assert back.n == g.n and back.m == g.m
        assert sorted((min(u, w), max(u, w), s) for u, w, s in back.edges) == \
            sorted((min(u, w), max(u, w), s) for u, w, s in g.edges)


def test_suppress_degree_two_keeps_path_sign():
    g = SignedGraph(3, ((0, 1, MINUS), (1, 2, MINUS), (0, 2, PLUS)))
    res = suppress_degree_two(g, 1)
    assert res.graph.n == 2 and res.graph.m == 2
    signs = sorted(s for _, _, s in res.graph.edges)
    assert signs == [PLUS, PLUS]  # minus*minus merges to a plus edge
