"""Signed multigraphs with half-edge incidences.

A signed graph is a multigraph (loops and parallel edges allowed) together
with a signature sigma: E -> {+1, -1}.  Every edge e consists of two
half-edges 2e and 2e+1; half-edge 2e sits at the first endpoint, 2e+1 at
the second.  Loops have both half-edges at the same vertex.

Graphs are immutable values: minor operations (switching, contraction,
uncontraction, deletion) return a new graph together with translation maps
from old to new indices.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

PLUS = 1
MINUS = -1

# Exhaustive routines refuse larger inputs rather than silently degrade.
DESK_VERTEX_LIMIT = 16
DESK_EDGE_LIMIT = 32


class DeskScaleError(Exception):
    """Input exceeds the configured limits for an exhaustive routine."""


@dataclass(frozen=True)
class SignedGraph:
    """Signed multigraph with dense vertex indices 0..n-1 and edge indices 0..m-1."""

    n: int
    edges: tuple[tuple[int, int, int], ...]  # (u, v, sigma)

    def __post_init__(self):
        for u, v, s in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge endpoint out of range: {(u, v, s)}")
            if s not in (PLUS, MINUS):
                raise ValueError(f"bad sign {s}")

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def sigma(self, e: int) -> int:
        return self.edges[e][2]

    def ends(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edges[e]
        return u, v

    def is_loop(self, e: int) -> bool:
        u, v, _ = self.edges[e]
        return u == v

    def other_end(self, e: int, v: int) -> int:
        u, w, _ = self.edges[e]
        return w if v == u else u

    # Half-edge h of edge e = h // 2; h = 2e at ends(e)[0], 2e+1 at ends(e)[1].
    def halfedge_vertex(self, h: int) -> int:
        return self.edges[h // 2][h % 2]

    def halfedges_at(self, v: int) -> list[int]:
        out = []
        for e, (u, w, _) in enumerate(self.edges):
            if u == v:
                out.append(2 * e)
            if w == v:
                out.append(2 * e + 1)
        return out

    def incident_edges(self, v: int) -> list[int]:
        """Edges touching v; a loop appears once."""
        return sorted({h // 2 for h in self.halfedges_at(v)})

    def degree(self, v: int) -> int:
        """Loops count twice."""
        return len(self.halfedges_at(v))

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for e in self.incident_edges(v):
            if not self.is_loop(e):
                out.add(self.other_end(e, v))
        return out

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e, (a, b, _) in enumerate(self.edges)
                if {a, b} == ({u, v} if u != v else {u}) and (a, b) in ((u, v), (v, u))]

    def negative_edges(self) -> list[int]:
        return [e for e in range(self.m) if self.sigma(e) == MINUS]

    def with_signs(self, sigma: dict[int, int] | Sequence[int]) -> "SignedGraph":
        if isinstance(sigma, dict):
            new = tuple((u, v, sigma.get(e, s)) for e, (u, v, s) in enumerate(self.edges))
        else:
            new = tuple((u, v, sigma[e]) for e, (u, v, _) in enumerate(self.edges))
        return SignedGraph(self.n, new)

    def same_underlying(self, other: "SignedGraph") -> bool:
        return self.n == other.n and all(
            (u, v) == (u2, v2) for (u, v, _), (u2, v2, _) in zip(self.edges, other.edges)
        ) and self.m == other.m

    # -- connectivity helpers --------------------------------------------

    def components(self, skip_edges: Iterable[int] = (), skip_vertices: Iterable[int] = ()) -> list[set[int]]:
        skip_e = set(skip_edges)
        skip_v = set(skip_vertices)
        seen: set[int] = set()
        comps = []
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(self.n) if v not in skip_v}
        for e, (u, w, _) in enumerate(self.edges):
            if e in skip_e or u in skip_v or w in skip_v:
                continue
            adj[u].append((e, w))
            adj[w].append((e, u))
        for s in adj:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for _, y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def checked_desk_scale(g: SignedGraph, vlimit: int = DESK_VERTEX_LIMIT, elimit: int = DESK_EDGE_LIMIT) -> None:
    if g.n > vlimit or g.m > elimit:
        raise DeskScaleError(f"graph with {g.n} vertices / {g.m} edges exceeds limit ({vlimit}, {elimit})")


@dataclass(frozen=True)
class Orientation:
    """A direction bit per half-edge: tau(h) = +1 iff h points away from its vertex.

    A positive edge has tau(h) * tau(h') = -1 (one tail, one head); a
    negative edge has tau(h) * tau(h') = +1 (both out or both in).
    """

    tau: tuple[int, ...]

    def __call__(self, h: int) -> int:
        return self.tau[h]

    @staticmethod
    def default(g: SignedGraph) -> "Orientation":
        tau = []
        for e in range(g.m):
            tau.append(PLUS)
            tau.append(-g.sigma(e))
        return Orientation(tuple(tau))

    def check(self, g: SignedGraph) -> None:
        if len(self.tau) != 2 * g.m:
            raise ValueError("orientation size mismatch")
        for e in range(g.m):
            if self.tau[2 * e] * self.tau[2 * e + 1] != -g.sigma(e):
                raise ValueError(f"orientation inconsistent with sign on edge {e}")

    def flip_edge(self, e: int) -> "Orientation":
        t = list(self.tau)
        t[2 * e] = -t[2 * e]
        t[2 * e + 1] = -t[2 * e + 1]
        return Orientation(tuple(t))

    def switch_at(self, g: SignedGraph, v: int) -> "Orientation":
        """Flip every half-edge at v (changes the signature of edges at v)."""
        t = list(self.tau)
        for h in g.halfedges_at(v):
            t[h] = -t[h]
        return Orientation(tuple(t))


@dataclass(frozen=True)
class EdgeCut:
    side: frozenset[int]
    cut_edges: frozenset[int]

    @staticmethod
    def from_side(g: SignedGraph, side: Iterable[int]) -> "EdgeCut":
        s = frozenset(side)
        return EdgeCut(s, frozenset(delta(g, s)))

    def validate(self, g: SignedGraph) -> None:
        if self.cut_edges != frozenset(delta(g, self.side)):
            raise ValueError("inconsistent cut: cut_edges != delta(side)")


def delta(g: SignedGraph, side: Iterable[int]) -> list[int]:
    """delta(X): edges with exactly one endpoint in X.  Loops never qualify."""
    s = set(side)
    return [e for e, (u, v, _) in enumerate(g.edges) if (u in s) != (v in s)]


# -- switching ------------------------------------------------------------

def switch_at(g: SignedGraph, v: int) -> SignedGraph:
    """Negate the sign of every non-loop edge incident to v."""
    if not (0 <= v < g.n):
        raise ValueError(f"unknown vertex {v}")
    new = []
    for u, w, s in g.edges:
        if (u == v) != (w == v):
            s = -s
        new.append((u, w, s))
    return SignedGraph(g.n, tuple(new))


def switch_on_set(g: SignedGraph, side: Iterable[int]) -> SignedGraph:
    """Switch at every vertex of `side`; exactly delta(side) changes sign."""
    s = set(side)
    new = []
    for u, w, sg in g.edges:
        if (u in s) != (w in s):
            sg = -sg
        new.append((u, w, sg))
    return SignedGraph(g.n, tuple(new))


def switch_on_cut(g: SignedGraph, cut: EdgeCut) -> SignedGraph:
    cut.validate(g)
    return switch_on_set(g, cut.side)


# -- balance --------------------------------------------------------------

@dataclass
class BalanceResult:
    balanced: bool
    switching_set: Optional[frozenset[int]] = None  # makes all edges positive
    negative_cycle: Optional[tuple[int, ...]] = None  # witness edge set (closed walk order)


def is_balanced(g: SignedGraph) -> BalanceResult:
    """2-colouring over sign parity: assign s(v) so that s(u)s(v) = sigma(e).

    Balanced iff consistent; the switching set is {v: s(v) = -1}.  On
    conflict, the tree path between the endpoints plus the offending edge
    is a negative cycle.
    """
    colour = [0] * g.n  # 0 unknown, else +-1
    parent: dict[int, tuple[int, int]] = {}  # v -> (parent vertex, edge)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n)}
    for e, (u, w, s) in enumerate(g.edges):
        if u == w:
            if s == MINUS:
                return BalanceResult(False, negative_cycle=(e,))
            continue
        adj[u].append((e, w))
        adj[w].append((e, u))
    for root in range(g.n):
        if colour[root]:
            continue
        colour[root] = PLUS
        stack = [root]
        while stack:
            x = stack.pop()
            for e, y in adj[x]:
                want = colour[x] * g.sigma(e)
                if colour[y] == 0:
                    colour[y] = want
                    parent[y] = (x, e)
                    stack.append(y)
                elif colour[y] != want:
                    # negative cycle: tree paths from x and y to their LCA, plus e
                    def path_up(a: int) -> list[tuple[int, int]]:
                        out = []
                        while a in parent:
                            p, pe = parent[a]
                            out.append((a, pe))
                            a = p
                        out.append((a, -1))
                        return out
                    px = path_up(x)
                    py = path_up(y)
                    vx = [a for a, _ in px]
                    vy = {a: i for i, (a, _) in enumerate(py)}
                    for i, a in enumerate(vx):
                        if a in vy:
                            cyc = [pe for _, pe in px[:i]] + [e]
                            cyc += [pe for _, pe in reversed(py[:vy[a]])]
                            return BalanceResult(False, negative_cycle=tuple(cyc))
                    raise AssertionError("LCA not found")
    return BalanceResult(True, switching_set=frozenset(v for v in range(g.n) if colour[v] == MINUS))


@dataclass
class EquivalenceResult:
    equivalent: bool
    switching_set: Optional[frozenset[int]] = None
    differing_cycle: Optional[tuple[int, ...]] = None


def signatures_equivalent(g1: SignedGraph, g2: SignedGraph) -> EquivalenceResult:
    """Two signatures on the same underlying graph are equivalent iff the
    set of edges where they differ is an edge-cut, i.e. iff every cycle has
    the same sign under both."""
    if not g1.same_underlying(g2):
        raise ValueError("underlying graphs differ")
    diff = g1.with_signs([MINUS if g1.sigma(e) != g2.sigma(e) else PLUS for e in range(g1.m)])
    res = is_balanced(diff)
    if res.balanced:
        return EquivalenceResult(True, switching_set=res.switching_set)
    return EquivalenceResult(False, differing_cycle=res.negative_cycle)


def min_negative_edges(g: SignedGraph, budget: int = 2) -> Optional[int]:
    """Minimum number of negative edges over all equivalent signatures.

    Returns the exact minimum if it is <= budget, else None ("exceeds
    budget").  Budgets >= 2 use exhaustive switching-set search and are
    limited to desk scale.
    """
    if is_balanced(g).balanced:
        return 0
    if budget < 1:
        return None
    # budget 1: is some single-edge signature equivalent?
    for e in range(g.m):
        cand = g.with_signs([MINUS if x == e else PLUS for x in range(g.m)])
        if signatures_equivalent(g, cand).equivalent:
            return 1
    if budget < 2:
        return None
    checked_desk_scale(g, elimit=64)
    best = g.m + 1
    for mask in range(1 << max(g.n - 1, 0)):
        side = [v for v in range(g.n - 1) if mask >> v & 1]
        cnt = sum(1 for e in range(g.m) if _switched_sign(g, e, side) == MINUS)
        best = min(best, cnt)
        if best <= 2:
            break
    return best if best <= budget else None


def _switched_sign(g: SignedGraph, e: int, side: Sequence[int]) -> int:
    u, v, s = g.edges[e]
    sset = set(side)
    if (u in sset) != (v in sset):
        return -s
    return s


def is_k_unbalanced(g: SignedGraph, k: int) -> bool:
    mne = min_negative_edges(g, budget=k)
    return mne is None or mne >= k


# -- connectivity ----------------------------------------------------------

def edge_connectivity(g: SignedGraph) -> int:
    """Global min cut of the underlying multigraph (signs ignored)."""
    if g.n <= 1:
        return g.m + 1 if g.n == 1 else 0  # conventionally infinite; callers compare with small k
    if not g.is_connected():
        return 0
    checked_desk_scale(g, elimit=1 << 30)
    best = g.m
    for mask in range(1, 1 << (g.n - 1)):
        side = [v for v in range(g.n - 1) if mask >> v & 1]
        best = min(best, len(delta(g, side)))
    return best


def _has_cycle(g: SignedGraph, vertices: set[int]) -> bool:
    """Does the induced subgraph on `vertices` contain a cycle?"""
    es = [e for e, (u, v, _) in enumerate(g.edges) if u in vertices and v in vertices]
    if any(g.is_loop(e) for e in es):
        return True
    seen_pairs = set()
    for e in es:
        u, v = g.ends(e)
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            return True  # parallel edges = digon
        seen_pairs.add(key)
    # forest check per component
    deg = {}
    for e in es:
        u, v = g.ends(e)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    verts = set(deg)
    return len(es) > 0 and len(es) > len(verts) - _component_count(es, g, verts)


def _component_count(es: list[int], g: SignedGraph, verts: set[int]) -> int:
    par = {v: v for v in verts}

    def find(x):
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    for e in es:
        u, v = g.ends(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            par[ru] = rv
    return len({find(v) for v in verts})


def is_cyclically_k_edge_connected(g: SignedGraph, k: int) -> bool:
    """No edge-cut of size < k separating two cycles (exhaustive bipartition scan)."""
    checked_desk_scale(g, elimit=1 << 30)
    for mask in range(1, 1 << (g.n - 1)):
        side = {v for v in range(g.n - 1) if mask >> v & 1}
        rest = set(range(g.n)) - side
        cut = delta(g, side)
        if len(cut) >= k:
            continue
        if _has_cycle(g, side) and _has_cycle(g, rest):
            return False
    return True


# -- minor operations -------------------------------------------------------

@dataclass
class MinorResult:
    graph: SignedGraph
    vertex_map: tuple[Optional[int], ...]  # old vertex -> new vertex
    edge_map: tuple[Optional[int], ...]  # old edge -> new edge (None if deleted)
    # parity of switches applied at each old vertex during the operation
    # (negative edges are switched positive before identification)
    switch_parity: tuple[int, ...] = ()


def contract(g: SignedGraph, e: int) -> MinorResult:
    """Contract a non-loop edge.

    A negative edge is first made positive by switching at its lower-index
    endpoint; the endpoints are then identified.  Positive loops created by
    the identification are deleted, negative loops are kept.
    """
    if g.is_loop(e):
        raise ValueError("cannot contract a loop")
    parity = [0] * g.n
    if g.sigma(e) == MINUS:
        u, v = g.ends(e)
        parity[min(u, v)] = 1
        g = switch_at(g, min(u, v))
    u, v = g.ends(e)
    keep, gone = min(u, v), max(u, v)
    vmap: list[Optional[int]] = []
    nxt = 0
    for x in range(g.n):
        if x == gone:
            vmap.append(None)
            continue
        vmap.append(nxt)
        nxt += 1
    vmap[gone] = vmap[keep]
    new_edges = []
    emap: list[Optional[int]] = []
    for i, (a, b, s) in enumerate(g.edges):
        if i == e:
            emap.append(None)
            continue
        na, nb = vmap[a], vmap[b]
        if na == nb and s == PLUS and (a == gone) != (b == gone):
            # positive loop created by the identification
            emap.append(None)
            continue
        emap.append(len(new_edges))
        new_edges.append((na, nb, s))
    return MinorResult(SignedGraph(nxt, tuple(new_edges)), tuple(vmap), tuple(emap),
                       tuple(parity))


def contract_set(g: SignedGraph, edge_set: Iterable[int]) -> MinorResult:
    """Contract every edge of edge_set (G/X).

    Each component of the contracted subgraph is switched so a spanning
    forest of it is all-positive first; remaining edges of the set become
    loops, deleted if positive and kept if negative.
    """
    todo = set(edge_set)
    vmap = list(range(g.n))
    emap: list[Optional[int]] = list(range(g.m))
    parity = [0] * g.n
    cur = g
    while True:
        pick = None
        for e in sorted(todo):
            ne = emap[e]
            if ne is not None and not cur.is_loop(ne):
                pick = e
                break
        if pick is None:
            break
        res = contract(cur, emap[pick])
        for v in range(g.n):
            if vmap[v] is not None:
                parity[v] ^= res.switch_parity[vmap[v]]
        cur = res.graph
        vmap = [res.vertex_map[x] if x is not None else None for x in vmap]
        emap = [res.edge_map[x] if x is not None else None for x in emap]
        todo.discard(pick)
    # remaining set members are loops now: delete positive, keep negative
    del_loops = set()
    for e in sorted(todo):
        ne = emap[e]
        if ne is not None and cur.sigma(ne) == PLUS:
            del_loops.add(ne)
    if del_loops:
        res = delete_edges(cur, del_loops)
        cur = res.graph
        vmap = [res.vertex_map[x] if x is not None else None for x in vmap]
        emap = [res.edge_map[x] if x is not None else None for x in emap]
    return MinorResult(cur, tuple(vmap), tuple(emap), tuple(parity))


def delete_edges(g: SignedGraph, edge_set: Iterable[int]) -> MinorResult:
    drop = set(edge_set)
    new_edges = []
    emap: list[Optional[int]] = []
    for e, ed in enumerate(g.edges):
        if e in drop:
            emap.append(None)
        else:
            emap.append(len(new_edges))
            new_edges.append(ed)
    return MinorResult(SignedGraph(g.n, tuple(new_edges)), tuple(range(g.n)), tuple(emap))


def delete_vertices(g: SignedGraph, vertex_set: Iterable[int]) -> MinorResult:
    drop = set(vertex_set)
    vmap: list[Optional[int]] = []
    nxt = 0
    for v in range(g.n):
        if v in drop:
            vmap.append(None)
        else:
            vmap.append(nxt)
            nxt += 1
    new_edges = []
    emap: list[Optional[int]] = []
    for u, w, s in g.edges:
        if u in drop or w in drop:
            emap.append(None)
        else:
            emap.append(len(new_edges))
            new_edges.append((vmap[u], vmap[w], s))
    return MinorResult(SignedGraph(nxt, tuple(new_edges)), tuple(vmap), tuple(emap))


@dataclass
class UncontractResult:
    graph: SignedGraph
    new_vertex: int
    new_edge: int
    edge_map: tuple[int, ...]  # old edge -> new edge (indices preserved here)


def uncontract(g: SignedGraph, v: int, h_e: int, h_f: int) -> UncontractResult:
    """Uncontract at v with the two half-edges h_e, h_f (both at v).

    Adds a new vertex v' of degree 3: the two half-edges are re-attached to
    v', and a new positive edge vv' is added.  Requires deg(v) >= 4.
    Passing the two halves of a loop at v turns it into an edge vv'...v'
    style structure per the half-edge bookkeeping.
    """
    if g.degree(v) < 4:
        raise ValueError(f"degree of {v} is below 4")
    for h in (h_e, h_f):
        if g.halfedge_vertex(h) != v:
            raise ValueError(f"half-edge {h} is not at vertex {v}")
    if h_e == h_f:
        raise ValueError("half-edges must differ")
    vp = g.n
    edges = [list(ed) for ed in g.edges]
    for h in (h_e, h_f):
        edges[h // 2][h % 2] = vp
    edges.append([v, vp, PLUS])
    new = SignedGraph(g.n + 1, tuple(tuple(ed) for ed in edges))
    return UncontractResult(new, vp, new.m - 1, tuple(range(g.m)))


def uncontract_edges(g: SignedGraph, v: int, e: int, f: int) -> UncontractResult:
    """Edge-level convenience wrapper; e, f must be distinct non-loop edges at v."""
    if e == f:
        raise ValueError("edges must differ")
    hs = []
    for ed in (e, f):
        cand = [h for h in (2 * ed, 2 * ed + 1) if g.halfedge_vertex(h) == v]
        if not cand:
            raise ValueError(f"edge {ed} not incident to {v}")
        hs.append(cand[0])
    return uncontract(g, v, hs[0], hs[1])


def suppress_degree_two(g: SignedGraph, v: int) -> MinorResult:
    """Remove a degree-2 vertex, merging its two edges (sign = product)."""
    inc = g.halfedges_at(v)
    if len(inc) != 2 or inc[0] // 2 == inc[1] // 2:
        raise ValueError("vertex is not suppressible")
    e1, e2 = inc[0] // 2, inc[1] // 2
    a = g.other_end(e1, v)
    b = g.other_end(e2, v)
    s = g.sigma(e1) * g.sigma(e2)
    res = delete_edges(g, {e1, e2})
    g2 = res.graph
    g3 = SignedGraph(g2.n, g2.edges + ((a, b, s),))
    res2 = delete_vertices(g3, {v})
    vmap = tuple(res2.vertex_map)
    emap = []
    for e in range(g.m):
        ne = res.edge_map[e]
        emap.append(res2.edge_map[ne] if ne is not None else None)
    return MinorResult(res2.graph, vmap, tuple(emap))


# -- text format -------------------------------------------------------------

def parse_sg(text: str) -> SignedGraph:
    """Signed-graph text format:

    line 1: ``sg <n> <m>``; then m lines ``e <u> <v> <+|->`` with 1-based
    vertex indices.  ``#`` comment lines are ignored.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "sg":
        raise ValueError(f"line {no}: expected 'sg <n> <m>'")
    n, m = int(parts[1]), int(parts[2])
    edges = []
    for no, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4 or parts[0] != "e":
            raise ValueError(f"line {no}: expected 'e <u> <v> <+|->'")
        u, v = int(parts[1]) - 1, int(parts[2]) - 1
        if parts[3] not in "+-":
            raise ValueError(f"line {no}: sign must be + or -")
        s = PLUS if parts[3] == "+" else MINUS
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {no}: vertex index out of range")
        edges.append((u, v, s))
    if len(edges) != m:
        raise ValueError(f"edge count mismatch: header says {m}, found {len(edges)}")
    return SignedGraph(n, tuple(edges))


def format_sg(g: SignedGraph) -> str:
    out = [f"sg {g.n} {g.m}"]
    for u, v, s in g.edges:
        out.append(f"e {u + 1} {v + 1} {'+' if s == PLUS else '-'}")
    return "\n".join(out) + "\n"
