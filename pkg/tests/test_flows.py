"""Constructive avoidance flows: circulations, barbells, 3-flow supports,
sun flows and the three constructors behind connect()."""

import random

import pytest

from helpers import host_with_sun, random_connected_graph, random_fbar
from sgflow import flows
from sgflow.core import MINUS, PLUS, Orientation, SignedGraph
from sgflow.duality import k6_projective_embedding, match_dual
from sgflow.generators import (k4_negative_triangle, negsun, petersen,
                               petersen_2neg)
from sgflow.groups import (boundary, integer_boundary, is_flow,
                           is_nowhere_zero, parse_group)
from sgflow.structures import all_cycles, order_cycle


def test_circulation_on_positive_cycle_has_zero_boundary():
    g = petersen()
    tau = Orientation.default(g)
    A = parse_group("Z5")
    for c in all_cycles(g):
        if c.sign != PLUS:
            continue
        coeffs = flows.circulation_coeffs(g, tau, c)
        assert set(coeffs) == set(c.edges)
        assert all(abs(x) == 1 for x in coeffs.values())
        f = [A.zero] * g.m
        flows.add_scaled(A, f, coeffs, (2,))
        assert is_flow(g, tau, f, A)


def test_flow_coeffs_through_covers_required_edges():
    g = petersen_2neg()
    tau = Orientation.default(g)
    A = parse_group("Z11")
    for e in range(g.m):
        coeffs = flows.flow_coeffs_through(g, tau, range(g.m), {e})
        assert coeffs.get(e, 0) != 0
        assert all(abs(x) <= 2 for x in coeffs.values())
        f = [A.zero] * g.m
        flows.add_scaled(A, f, coeffs, (1,))
        assert is_flow(g, tau, f, A)


def test_barbell_through_both_negative_edges():
    g = petersen_2neg()
    tau = Orientation.default(g)
    # restrict the pool to the two vertex-disjoint negative 5-cycles plus
    # one spoke: the only zero-boundary flow through both is a barbell
    pool = set(range(5)) | set(range(10, 15)) | {5}
    coeffs = flows.flow_coeffs_through(g, tau, pool, {0, 10})
    assert coeffs[0] != 0 and coeffs[10] != 0
    assert any(abs(x) == 2 for x in coeffs.values())  # the connecting path
    A = parse_group("Z7")
    f = [A.zero] * g.m
    flows.add_scaled(A, f, coeffs, (3,))
    assert is_flow(g, tau, f, A)


def _random_valid_support(rng, max_edges=12):
    """Random (graph, support, carrier) with even support degrees and an
    even number of negative support edges."""
    while True:
        g = random_connected_graph(rng, n_lo=4, n_hi=7, extra_hi=6)
        if g.m > max_edges:
            continue
        carrier = set(range(g.m))
        cycles = [c for c in all_cycles(g)]
        if not cycles:
            continue
        sup = set()
        for c in cycles:
            if rng.random() < 0.5:
                sup ^= set(c.edges)
        if not sup:
            continue
        if sum(1 for e in sup if g.sigma(e) == MINUS) % 2:
            continue
        return g, sup, carrier


def test_z2_to_3flow_on_random_supports():
    rng = random.Random(61)
    done = 0
    while done < 60:
        g, sup, car = _random_valid_support(rng)
        psi = flows.z2_to_3flow(g, sup, car)
        assert all(abs(psi[e]) == 1 for e in sup)
        assert all(abs(psi[e]) <= 2 for e in car)
        assert all(psi[e] == 0 for e in range(g.m) if e not in car)
        assert integer_boundary(g, Orientation.default(g), psi) == [0] * g.n
        done += 1


def test_z2_to_3flow_rejects_bad_supports():
    g = petersen()
    with pytest.raises(ValueError):
        flows.z2_to_3flow(g, {0}, range(g.m))  # odd degrees
    with pytest.raises(ValueError):
        flows.z2_to_3flow(g, {0, 1}, {0, 1})  # support not a cycle space elem


def test_forbidden_band_size():
    A = parse_group("Z11")
    assert len(flows.forbidden_band(A, (4,))) == 5
    assert flows.forbidden_band(A, (0,)) == {(0,), (3,), (8,), (6,), (5,)}


def test_sun_flow_clears_the_band_on_sun_edges():
    rng = random.Random(7)
    A = parse_group("Z11")
    for n in (3, 4, 5, 6):
        g, sun = host_with_sun(n)
        res = flows.sun_flow(g, sun, None, 11, [A.zero] * g.m)
        assert res.case in ("zero-odd", "zero-even")
        assert is_flow(g, Orientation.default(g), res.flow, A)
        for _ in range(15):
            fb = random_fbar(rng, A, g.m)
            r = flows.sun_flow(g, sun, None, 11, fb)
            assert is_flow(g, Orientation.default(g), r.flow, A)
            for e in sun.edge_set:
                if e == r.e_prime:
                    assert r.flow[e] != fb[e]
                else:
                    assert r.flow[e] not in flows.forbidden_band(A, fb[e])


def test_sun_flow_requires_a_large_prime():
    g, sun = host_with_sun(4)
    A = parse_group("Z7")
    with pytest.raises(ValueError):
        flows.sun_flow(g, sun, None, 7, [A.zero] * g.m)


def test_connect_composite_on_petersen_variants():
    rng = random.Random(43)
    g = petersen()
    for spec in ("Z6", "Z2xZ2xZ2", "Z9"):
        A = parse_group(spec)
        for _ in range(5):
            fb = random_fbar(rng, A, g.m)
            cert = flows.connect_composite(g, A, fb)
            assert cert.strategy == "composite"
            assert flows.verify_avoidance(g, cert)


def test_connect_composite_zero_map_gives_nowhere_zero_flow():
    g = petersen()
    A = parse_group("Z6")
    cert = flows.connect_composite(g, A, [A.zero] * g.m)
    assert flows.verify_avoidance(g, cert)
    assert is_nowhere_zero(cert.flow, A)


def test_connect_composite_rejects_small_or_prime_groups():
    g = petersen()
    with pytest.raises(ValueError):
        flows.connect_composite(g, parse_group("Z2xZ2"), [(0, 0)] * g.m)
    with pytest.raises(ValueError):
        flows.connect_composite(g, parse_group("Z7"), [(0,)] * g.m)


def test_connect_prime_on_doubly_negative_petersen():
    rng = random.Random(53)
    g = petersen_2neg()
    for p in (11, 13):
        A = parse_group(f"Z{p}")
        for _ in range(5):
            fb = random_fbar(rng, A, g.m)
            cert = flows.connect_prime(g, p, fb)
            assert cert.strategy == "prime"
            assert flows.verify_avoidance(g, cert)


def test_connect_prime_rejects_small_primes():
    g = petersen_2neg()
    with pytest.raises(ValueError):
        flows.connect_prime(g, 7, [(0,)] * g.m)


def test_connect_projective_on_petersen():
    rng = random.Random(59)
    g = petersen()
    for spec in ("Z6", "Z7"):
        A = parse_group(spec)
        for _ in range(5):
            fb = random_fbar(rng, A, g.m)
            cert = flows.connect_projective(g, A, fb)
            assert cert.strategy == "projective"
            assert flows.verify_avoidance(g, cert)


def test_connect_dispatcher_picks_strategies():
    g = petersen()
    A6 = parse_group("Z6")
    cert = flows.connect(g, A6, [A6.zero] * g.m)
    assert cert.strategy == "composite"
    A11 = parse_group("Z11")
    g2 = petersen_2neg()
    cert = flows.connect(g2, A11, [A11.zero] * g2.m)
    assert cert.strategy == "prime"
    emb = match_dual(k6_projective_embedding(), g)
    cert = flows.connect(g, A6, [A6.zero] * g.m, embedding=emb)
    assert cert.strategy == "projective"


def test_connect_falls_back_to_oracle_and_reports_unsat():
    g = petersen()
    A = parse_group("Z5")
    cert = flows.connect(g, A, [A.zero] * g.m)
    assert cert.strategy == "oracle"
    assert cert.flow is None
    assert flows.verify_avoidance(g, cert)


def test_connect_handles_non_cubic_graphs_by_reduction():
    edges = []
    for u in range(5):
        for v in range(u + 1, 5):
            neg = (u, v) in ((0, 1), (1, 2), (0, 2))
            edges.append((u, v, MINUS if neg else PLUS))
    g = SignedGraph(5, tuple(edges))
    rng = random.Random(67)
    A = parse_group("Z6")
    for _ in range(5):
        fb = random_fbar(rng, A, g.m)
        cert = flows.connect(g, A, fb)
        assert flows.verify_avoidance(g, cert)


def test_connect_rejects_graphs_outside_scope():
    A = parse_group("Z6")
    with pytest.raises(ValueError):
        flows.connect(negsun(4), A, [A.zero] * 8)  # not 3-edge-connected
    from sgflow.generators import k4

    with pytest.raises(ValueError):
        flows.connect(k4(), A, [A.zero] * 6)  # balanced


def test_certificate_text_round_trip():
    g = petersen()
    A = parse_group("Z6")
    rng = random.Random(71)
    fb = random_fbar(rng, A, g.m)
    cert = flows.connect(g, A, fb)
    back = flows.parse_avoidance(flows.format_avoidance(cert))
    assert back.strategy == cert.strategy
    assert back.group == cert.group
    assert back.flow == cert.flow and back.fbar == cert.fbar
    assert back.e_prime == cert.e_prime
    assert back.artifacts == cert.artifacts
    assert flows.verify_avoidance(g, back)


def test_verifier_rejects_tampered_flows():
    g = petersen()
    A = parse_group("Z6")
    cert = flows.connect(g, A, [A.zero] * g.m)
    cert.flow[0] = A.zero  # zero value breaks avoidance of fbar = 0
    assert not flows.verify_avoidance(g, cert)
