"""Exact backtracking oracles: boundary satisfaction, flows, connectivity."""

import random

import pytest

from helpers import random_connected_graph, random_elem
from sgflow.core import DeskScaleError, MINUS, PLUS, Orientation, SignedGraph
from sgflow.generators import k4, k4_negative_triangle, negsun, petersen
from sgflow.groups import boundary, is_A_boundary, is_flow, is_nowhere_zero, \
    parse_group
from sgflow.oracle import (MAX_EXACT_VERTICES, has_nz_A_flow, has_nz_k_flow,
                           is_A_connected, satisfy_boundary)


def test_satisfy_boundary_returns_verified_solutions():
    rng = random.Random(17)
    tried = found = 0
    for _ in range(150):
        g = random_connected_graph(rng, n_lo=3, n_hi=6)
        A = parse_group(rng.choice(["Z4", "Z5", "Z6", "Z2xZ2"]))
        f0 = [random_elem(rng, A) for _ in range(g.m)]
        beta = boundary(g, Orientation.default(g), f0, A)
        tried += 1
        f = satisfy_boundary(g, A, beta, allow_zero=True)
        # f0 itself satisfies beta, so a solution must exist
        assert f is not None
        assert boundary(g, Orientation.default(g), f, A) == beta
        found += 1
    assert found == tried


def test_satisfy_boundary_respects_forbidden_map():
    g = k4_negative_triangle()
    A = parse_group("Z6")
    rng = random.Random(23)
    for _ in range(30):
        fbar = [random_elem(rng, A) for _ in range(g.m)]
        f = satisfy_boundary(g, A, [A.zero] * g.n, fbar=fbar)
        assert f is not None
        assert is_nowhere_zero(f, A)
        assert all(f[e] != fbar[e] for e in range(g.m))
        assert is_flow(g, Orientation.default(g), f, A)


def test_satisfy_boundary_rejects_non_boundaries():
    g = k4()
    A = parse_group("Z4")
    bad = [(1,), (0,), (0,), (0,)]  # sums to 1, not of the form 2a
    with pytest.raises(ValueError):
        satisfy_boundary(g, A, bad)


def test_flow_existence_on_small_graphs():
    tri = SignedGraph(3, ((0, 1, PLUS), (1, 2, PLUS), (0, 2, PLUS)))
    assert has_nz_k_flow(tri, 2) is not None
    assert has_nz_A_flow(tri, parse_group("Z2")) is not None
    assert has_nz_k_flow(k4(), 3) is None
    assert has_nz_k_flow(k4(), 4) is not None


def test_positive_petersen_needs_a_5_flow():
    g = petersen(all_positive=True)
    assert has_nz_k_flow(g, 4) is None
    f = has_nz_k_flow(g, 5)
    assert f is not None
    assert all(0 < abs(x) < 5 for x in f)


def test_pendant_edge_blocks_zero_boundary():
    g = negsun(3)
    A = parse_group("Z6")
    assert has_nz_A_flow(g, A) is None
    verdict = is_A_connected(g, A)
    assert verdict.status == "no"
    assert is_A_boundary(A, verdict.witness_beta) is not None


def test_k4_negative_triangle_is_z6_connected():
    verdict = is_A_connected(k4_negative_triangle(), parse_group("Z6"))
    assert verdict.status == "yes"
    assert verdict.checked == 6 ** 3 * 3  # beta heads times doubled targets


def test_sampling_mode_agrees_with_exact_yes():
    g = k4_negative_triangle()
    A = parse_group("Z6")
    verdict = is_A_connected(g, A, samples=200, seed=4)
    assert verdict.status == "sampled-yes"
    assert verdict.checked == 200


def test_desk_scale_limits():
    with pytest.raises(DeskScaleError):
        is_A_connected(petersen(), parse_group("Z6"))
    assert petersen().n > MAX_EXACT_VERTICES
    big = SignedGraph(2, tuple((0, 1, PLUS) for _ in range(40)))
    with pytest.raises(DeskScaleError):
        has_nz_k_flow(big, 3)
