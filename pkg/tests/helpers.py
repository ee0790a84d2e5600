"""Shared helpers: seeded random instances used across the test modules."""

from __future__ import annotations

import random

from sgflow.core import MINUS, PLUS, SignedGraph
from sgflow.structures import NegativeSun, build_negative_sun


def random_connected_graph(rng: random.Random, n_lo: int = 3, n_hi: int = 8,
                           extra_hi: int = 5, neg_prob: float = 0.4
                           ) -> SignedGraph:
    """Small random connected loopless signed multigraph."""
    n = rng.randrange(n_lo, n_hi + 1)
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v, MINUS if rng.random() < neg_prob else PLUS))
    for _ in range(rng.randrange(extra_hi + 1)):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        edges.append((u, v, MINUS if rng.random() < neg_prob else PLUS))
    return SignedGraph(n, tuple(edges))


def host_with_sun(n: int) -> tuple[SignedGraph, NegativeSun]:
    """A negative sun on 2n vertices inside a host where the tips are wired
    into a cycle with one extra negative chord, so that tip-to-tip paths
    of either parity exist outside the sun's central cycle."""
    g, sun = build_negative_sun(n)
    edges = list(g.edges)
    tips = list(range(n, 2 * n))
    for i in range(n):
        edges.append((tips[i], tips[(i + 1) % n], PLUS))
    edges.append((tips[0], tips[n // 2], MINUS))
    return SignedGraph(2 * n, tuple(edges)), sun


def random_elem(rng: random.Random, A) -> tuple:
    return tuple(rng.randrange(k) for k in A.factors)


def random_fbar(rng: random.Random, A, m: int) -> list[tuple]:
    return [random_elem(rng, A) for _ in range(m)]
