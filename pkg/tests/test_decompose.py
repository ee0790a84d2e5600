"""Edge-partition certificates: spanning tree + 2-base, base + sun, general."""

import random

import pytest

from sgflow.core import MINUS
from sgflow.decompose import (decompose_base_sun, decompose_general,
                              decompose_tree_2base, format_certificate,
                              has_two_disjoint_cycles, parse_certificate,
                              verify_partition)
from sgflow.generators import (k4, k4_negative_triangle, negsun, petersen,
                               petersen_2neg, random_cubic_3connected)
from sgflow.structures import as_negative_sun, is_k_base, k_closure


def test_tree_2base_on_named_graphs():
    for g in (petersen(all_positive=True), petersen(), k4()):
        cert = decompose_tree_2base(g)
        ok, why = verify_partition(g, cert)
        assert ok, why
        assert len(cert.x1) == g.n - 1  # spanning tree
        assert is_k_base(g, cert.x2, 2)
        assert cert.x1 | cert.x2 == frozenset(range(g.m))
        assert not (cert.x1 & cert.x2)


def test_tree_2base_on_random_cubic_graphs():
    rng = random.Random(77)
    for _ in range(10):
        n = rng.choice((8, 10, 12, 14))
        g = random_cubic_3connected(n, rng)
        cert = decompose_tree_2base(g)
        ok, why = verify_partition(g, cert)
        assert ok, why


def test_base_sun_on_doubly_negative_petersen():
    g = petersen_2neg()
    cert = decompose_base_sun(g)
    ok, why = verify_partition(g, cert)
    assert ok, why
    sun = as_negative_sun(g, cert.f)
    assert sun is not None
    sun.validate(g)
    # the 2-closure of X2 recovers everything outside the sun
    closure = k_closure(g, cert.x2, 2).closure
    assert closure == frozenset(range(g.m)) - cert.f


def test_general_decomposition_on_named_graphs():
    for g in (petersen(), petersen_2neg(), k4_negative_triangle()):
        cert = decompose_general(g)
        ok, why = verify_partition(g, cert)
        assert ok, why


def test_certificate_text_round_trip():
    g = petersen_2neg()
    cert = decompose_base_sun(g)
    back = parse_certificate(format_certificate(cert))
    assert back.mode == cert.mode
    assert back.x1 == cert.x1 and back.x2 == cert.x2 and back.f == cert.f


def test_verifier_rejects_tampered_certificates():
    g = petersen()
    cert = decompose_tree_2base(g)
    e = min(cert.x2)
    cert.x1 = cert.x1 | {e}
    cert.x2 = cert.x2 - {e}
    ok, why = verify_partition(g, cert)
    assert not ok and why


def test_two_disjoint_negative_cycles():
    pair = has_two_disjoint_cycles(petersen_2neg(), want_negative=True)
    assert pair is not None
    c1, c2 = pair
    assert c1.sign == MINUS and c2.sign == MINUS
    assert not (set(c1.vertices) & set(c2.vertices))
    assert has_two_disjoint_cycles(petersen(), want_negative=True) is None


def test_decompose_requires_cubic_3connected_input():
    with pytest.raises(ValueError):
        decompose_tree_2base(negsun(4))
