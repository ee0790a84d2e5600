"""Embeddings, face tracing, oriented duals and the coloring/flow transfer."""

import random

import pytest

from helpers import random_elem
from sgflow.core import PLUS, Orientation, SignedGraph, min_negative_edges
from sgflow.duality import (PLANE, EmbeddedGraph, build_ps, canonical_ps,
                            coloring_from_flow, flow_from_coloring, format_emb,
                            k6_projective_embedding, match_dual, oriented_dual,
                            parse_emb, trace_faces)
from sgflow.groups import is_flow, is_nowhere_zero, parse_group


def planar_k4_embedding() -> EmbeddedGraph:
    # K4 drawn with vertex 3 inside the triangle 0,1,2
    g = SignedGraph(4, ((0, 1, PLUS), (1, 2, PLUS), (0, 2, PLUS),
                        (0, 3, PLUS), (1, 3, PLUS), (2, 3, PLUS)))
    # counterclockwise rotations from a straight-line drawing
    rotation = (
        (0, 6, 4),    # at 0: towards 1, 3, 2
        (2, 8, 1),    # at 1: towards 2, 3, 0
        (5, 10, 3),   # at 2: towards 0, 3, 1
        (11, 7, 9),   # at 3: towards 2, 0, 1
    )
    return EmbeddedGraph(g, rotation, (PLUS,) * 6, PLANE)


def test_planar_k4_has_four_faces():
    eg = planar_k4_embedding()
    faces = trace_faces(eg)
    assert len(faces) == 4 == eg.expected_faces()
    assert sorted(len(f.half_edges()) for f in faces) == [3, 3, 3, 3]


def test_projective_k6_has_ten_triangular_faces():
    eg = k6_projective_embedding()
    faces = trace_faces(eg)
    assert len(faces) == 10 == eg.expected_faces()
    assert all(len(f.half_edges()) == 3 for f in faces)


def test_oriented_dual_of_projective_k6_is_petersen_like():
    d = oriented_dual(k6_projective_embedding())
    g = d.graph
    assert g.n == 10 and g.m == 15
    assert all(g.degree(v) == 3 for v in range(g.n))
    # the dual signature is unbalanced and not 1-unbalanced
    assert min_negative_edges(g, budget=2) is None


def test_match_dual_identifies_canonical_labelling():
    corr = build_ps()
    assert corr.target.edges == canonical_ps().edges


def test_flow_from_coloring_yields_flows():
    eg = k6_projective_embedding()
    d = oriented_dual(eg)
    A = parse_group("Z6")
    rng = random.Random(31)
    tau = Orientation.default(d.graph)
    for _ in range(100):
        c = [random_elem(rng, A) for _ in range(eg.graph.n)]
        f = flow_from_coloring(eg, d, c, A)
        assert is_flow(d.graph, tau, f, A)


def test_proper_coloring_gives_nowhere_zero_flow():
    eg = k6_projective_embedding()
    d = oriented_dual(eg)
    A = parse_group("Z6")
    c = [(i,) for i in range(6)]  # all colors distinct on K6
    f = flow_from_coloring(eg, d, c, A)
    assert is_nowhere_zero(f, A)


def test_coloring_round_trips_through_flows():
    eg = k6_projective_embedding()
    d = oriented_dual(eg)
    A = parse_group("Z7")  # no order-2 elements, so potentials exist
    rng = random.Random(41)
    for _ in range(50):
        c = [random_elem(rng, A) for _ in range(6)]
        shift = A.sub((0,), c[0])
        f = flow_from_coloring(eg, d, c, A)
        c2 = coloring_from_flow(eg, d, f, A)
        # potentials are unique up to a constant shift
        assert [A.add(x, shift) for x in c] == c2


def test_coloring_from_flow_rejects_order_two_groups():
    eg = k6_projective_embedding()
    d = oriented_dual(eg)
    A = parse_group("Z6")
    with pytest.raises(ValueError):
        coloring_from_flow(eg, d, [A.zero] * 15, A)


def test_push_and_pull_are_inverse():
    corr = build_ps()
    A = parse_group("Z6")
    rng = random.Random(51)
    for _ in range(50):
        f = [random_elem(rng, A) for _ in range(15)]
        assert corr.pull_map(corr.push_flow(f, A), A) == f


def test_emb_format_round_trip():
    eg = k6_projective_embedding()
    back = parse_emb(format_emb(eg))
    assert back.rotation == eg.rotation
    assert back.edge_sign == eg.edge_sign
    assert back.surface == eg.surface
    assert back.graph.edges == tuple((u, v, PLUS)
                                     for u, v, _ in eg.graph.edges)


def test_parse_emb_reports_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        parse_emb("emb plane 2 1\nr 1 1 5\nr 2 2\ns 1 +\n")
