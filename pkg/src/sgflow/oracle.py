"""Ground-truth search for flows and boundary satisfaction.

Everything here is exact backtracking at desk scale: assign group (or
integer) values edge by edge, propagate forced values at vertices whose
last incident edge is being decided, and prune on residual-boundary
violations.  Branching effectively happens only on cotree edges, so
Petersen-sized instances finish quickly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import DeskScaleError, Orientation, SignedGraph
from .groups import AbelianGroup, Elem, boundary, is_A_boundary

# Hard ceilings for the exact modes.
MAX_EXACT_VERTICES = 8
MAX_EXACT_GROUP_ORDER = 9
MAX_FLOW_EDGES = 18


def _edge_order(g: SignedGraph) -> list[int]:
    """Cotree edges first, then tree edges; forcing cascades through the tree."""
    par = list(range(g.n))

    def find(x: int) -> int:
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    tree_set = set()
    for e, (u, v, _) in enumerate(g.edges):
        if u != v and find(u) != find(v):
            par[find(u)] = find(v)
            tree_set.add(e)
    cotree = [e for e in range(g.m) if e not in tree_set]
    return cotree + sorted(tree_set)


def satisfy_boundary(
    g: SignedGraph,
    A: AbelianGroup,
    beta: Sequence[Elem],
    fbar: Optional[Sequence[Elem]] = None,
    tau: Optional[Orientation] = None,
    allow_zero: bool = False,
) -> Optional[list[Elem]]:
    """Find a nowhere-zero f with boundary beta and f(e) != fbar(e), or None.

    With allow_zero, edges may carry zero (useful when only the avoidance
    of fbar matters, not nowhere-zeroness).

    beta must be an A-boundary (sum = 2a for some a); this is a necessary
    condition for solvability and is checked up front.
    """
    if is_A_boundary(A, beta) is None:
        raise ValueError("beta is not an A-boundary (sum not of the form 2a)")
    if g.m > 2 * MAX_FLOW_EDGES:
        raise DeskScaleError(f"{g.m} edges exceeds search limit")
    if tau is None:
        tau = Orientation.default(g)

    # coefficient of edge e at vertex v: sum of tau over its half-edges at v
    coeff: list[dict[int, int]] = []
    for e in range(g.m):
        c: dict[int, int] = {}
        for h in (2 * e, 2 * e + 1):
            v = g.halfedge_vertex(h)
            c[v] = c.get(v, 0) + tau(h)
        coeff.append(c)

    residual = [b for b in beta]
    remaining = [0] * g.n  # unassigned incident edges per vertex (loop counts once)
    for e in range(g.m):
        for v in coeff[e]:
            remaining[v] += 1

    f: list[Optional[Elem]] = [None] * g.m
    order = _edge_order(g)
    domain = [a for a in A.elements() if allow_zero or a != A.zero]

    def candidates(e: int) -> list[Elem]:
        """Values compatible with every saturated endpoint of e."""
        cands: Optional[list[Elem]] = None
        for v, c in coeff[e].items():
            if remaining[v] != 1:
                continue
            r = residual[v]
            if c == 0:
                if r != A.zero:
                    return []
                continue
            if abs(c) == 1:
                want = r if c == 1 else A.neg(r)
                vals = [want]
            else:  # |c| == 2, a loop contributing twice
                target = r if c > 0 else A.neg(r)
                vals = A.halving_preimages(target)
            cands = vals if cands is None else [x for x in cands if x in vals]
        if cands is None:
            cands = domain
        bad = fbar[e] if fbar is not None else None
        return [x for x in cands if (allow_zero or x != A.zero) and x != bad]

    def pick() -> Optional[int]:
        forced = None
        for e in order:
            if f[e] is not None:
                continue
            if any(remaining[v] == 1 for v in coeff[e]):
                return e
            if forced is None:
                forced = e
        return forced

    def assign(e: int, val: Elem) -> None:
        f[e] = val
        for v, c in coeff[e].items():
            residual[v] = A.sub(residual[v], A.smul(c, val))
            remaining[v] -= 1

    def unassign(e: int) -> None:
        val = f[e]
        f[e] = None
        for v, c in coeff[e].items():
            residual[v] = A.add(residual[v], A.smul(c, val))
            remaining[v] += 1

    def dfs(done: int) -> bool:
        if done == g.m:
            return all(r == A.zero for r in residual)
        e = pick()
        for val in candidates(e):
            assign(e, val)
            if all(residual[v] == A.zero for v in coeff[e] if remaining[v] == 0):
                if dfs(done + 1):
                    return True
            unassign(e)
        return False

    if dfs(0):
        return [x for x in f]  # type: ignore[list-item]
    return None


def has_nz_A_flow(g: SignedGraph, A: AbelianGroup,
                  fbar: Optional[Sequence[Elem]] = None) -> Optional[list[Elem]]:
    return satisfy_boundary(g, A, [A.zero] * g.n, fbar=fbar)


def has_nz_k_flow(g: SignedGraph, k: int) -> Optional[list[int]]:
    """Integer flow with values in {-(k-1),...,-1,1,...,k-1}, zero boundary
    under the default orientation; None if no such flow exists."""
    if k < 2:
        return None
    if g.m > MAX_FLOW_EDGES:
        raise DeskScaleError(f"{g.m} edges exceeds search limit")
    tau = Orientation.default(g)
    coeff: list[dict[int, int]] = []
    for e in range(g.m):
        c: dict[int, int] = {}
        for h in (2 * e, 2 * e + 1):
            v = g.halfedge_vertex(h)
            c[v] = c.get(v, 0) + tau(h)
        coeff.append(c)
    residual = [0] * g.n
    remaining = [0] * g.n
    for e in range(g.m):
        for v in coeff[e]:
            remaining[v] += 1
    f: list[Optional[int]] = [None] * g.m
    order = _edge_order(g)
    domain = [x for x in range(-(k - 1), k) if x != 0]

    def candidates(e: int) -> list[int]:
        cands: Optional[list[int]] = None
        for v, c in coeff[e].items():
            if remaining[v] != 1:
                continue
            r = residual[v]
            if c == 0:
                if r != 0:
                    return []
                continue
            if r % c != 0:
                return []
            vals = [r // c]
            cands = vals if cands is None else [x for x in cands if x in vals]
        if cands is None:
            return domain
        return [x for x in cands if x != 0 and abs(x) < k]

    def pick() -> Optional[int]:
        fallback = None
        for e in order:
            if f[e] is not None:
                continue
            if any(remaining[v] == 1 for v in coeff[e]):
                return e
            if fallback is None:
                fallback = e
        return fallback

    def dfs(done: int) -> bool:
        if done == g.m:
            return all(r == 0 for r in residual)
        e = pick()
        for val in candidates(e):
            f[e] = val
            ok = True
            for v, c in coeff[e].items():
                residual[v] -= c * val
                remaining[v] -= 1
                if remaining[v] == 0 and residual[v] != 0:
                    ok = False
            if ok and dfs(done + 1):
                return True
            for v, c in coeff[e].items():
                residual[v] += c * val
                remaining[v] += 1
            f[e] = None
        return False

    if dfs(0):
        return [x for x in f]  # type: ignore[list-item]
    return None


@dataclass
class ConnectivityVerdict:
    status: str  # "yes", "no", "sampled-yes"
    witness_beta: Optional[list[Elem]] = None
    witness_fbar: Optional[list[Elem]] = None
    seed: Optional[int] = None
    checked: int = 0


def _all_boundaries(g: SignedGraph, A: AbelianGroup):
    """Every beta with sum(beta) in 2A, zero boundary first."""
    import itertools

    doubled = sorted({A.add(a, a) for a in A.elements()})
    elems = sorted(A.elements())
    for head in itertools.product(elems, repeat=g.n - 1):
        partial = A.sum(head)
        for target in doubled:
            yield list(head) + [A.sub(target, partial)]


def is_A_connected(
    g: SignedGraph,
    A: AbelianGroup,
    samples: Optional[int] = None,
    seed: int = 0,
) -> ConnectivityVerdict:
    """Exact mode (samples=None): enumerate every A-boundary and try to
    satisfy it (no forbidden map).  Sampling mode: random (beta, fbar)
    pairs, verdict "sampled-yes" if none fails.
    """
    if samples is None:
        if g.n > MAX_EXACT_VERTICES or A.order > MAX_EXACT_GROUP_ORDER:
            raise DeskScaleError(
                f"exact A-connectivity limited to {MAX_EXACT_VERTICES} vertices"
                f" and group order {MAX_EXACT_GROUP_ORDER}")
        count = 0
        for beta in _all_boundaries(g, A):
            count += 1
            if satisfy_boundary(g, A, beta) is None:
                return ConnectivityVerdict("no", witness_beta=beta, checked=count)
        return ConnectivityVerdict("yes", checked=count)
    rng = random.Random(seed)
    elems = sorted(A.elements())
    doubled = sorted({A.add(a, a) for a in A.elements()})
    for i in range(samples):
        beta = [rng.choice(elems) for _ in range(g.n - 1)]
        target = rng.choice(doubled)
        beta.append(A.sub(target, A.sum(beta)))
        fbar = [rng.choice(elems) for _ in range(g.m)]
        if satisfy_boundary(g, A, beta, fbar=fbar) is None:
            return ConnectivityVerdict("no", witness_beta=beta, witness_fbar=fbar,
                                       seed=seed, checked=i + 1)
    return ConnectivityVerdict("sampled-yes", seed=seed, checked=samples)
