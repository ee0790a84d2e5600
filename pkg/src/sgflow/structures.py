"""Structural objects used by the decomposition and flow machinery.

Cycles are enumerated through the GF(2) cycle space: every simple cycle is
a symmetric difference of fundamental cycles, so scanning all 2^(m-n+c)
combinations and keeping the connected 2-regular ones is exhaustive.  Desk
scale keeps the dimension small (6 for Petersen, 10 for K6).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import (DeskScaleError, SignedGraph, MINUS, PLUS, delete_edges,
                   is_balanced)

MAX_CYCLE_SPACE_DIM = 20


@dataclass(frozen=True)
class CycleRef:
    """A simple cycle as an edge sequence in traversal order."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]  # vertices[i] is shared by edges[i-1], edges[i]
    sign: int

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


def cycle_sign(g: SignedGraph, edges: Iterable[int]) -> int:
    s = 1
    for e in edges:
        s *= g.sigma(e)
    return s


def order_cycle(g: SignedGraph, edge_set: Iterable[int]) -> CycleRef:
    """Arrange an unordered cycle edge set into a CycleRef; raises if the
    set is not a single simple cycle."""
    es = sorted(set(edge_set))
    if not es:
        raise ValueError("empty edge set")
    if len(es) == 1:
        e = es[0]
        if not g.is_loop(e):
            raise ValueError("single non-loop edge is not a cycle")
        return CycleRef((e,), (g.ends(e)[0],), g.sigma(e))
    inc: dict[int, list[int]] = {}
    for e in es:
        u, v = g.ends(e)
        if u == v:
            raise ValueError("loop inside a multi-edge cycle set")
        inc.setdefault(u, []).append(e)
        inc.setdefault(v, []).append(e)
    if any(len(x) != 2 for x in inc.values()) or len(inc) != len(es):
        raise ValueError("edge set is not 2-regular with |V| = |E|")
    start = min(inc)
    verts = [start]
    edges = []
    prev_e = -1
    cur = start
    while True:
        e = next(x for x in inc[cur] if x != prev_e)
        edges.append(e)
        cur = g.other_end(e, cur)
        prev_e = e
        if cur == start:
            break
        verts.append(cur)
    if len(edges) != len(es):
        raise ValueError("edge set is disconnected (two or more cycles)")
    return CycleRef(tuple(edges), tuple(verts), cycle_sign(g, edges))


def _spanning_forest(g: SignedGraph) -> list[int]:
    par = list(range(g.n))

    def find(x: int) -> int:
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    tree = []
    for e, (u, v, _) in enumerate(g.edges):
        if u != v and find(u) != find(v):
            par[find(u)] = find(v)
            tree.append(e)
    return tree


def fundamental_cycle(g: SignedGraph, tree: Sequence[int], e: int) -> list[int]:
    """Edges of the unique cycle in tree + e (e itself if a loop)."""
    if g.is_loop(e):
        return [e]
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n)}
    for t in tree:
        u, v = g.ends(t)
        adj[u].append((t, v))
        adj[v].append((t, u))
    u0, v0 = g.ends(e)
    # BFS tree path u0 -> v0
    prev: dict[int, tuple[int, int]] = {u0: (-1, -1)}
    queue = [u0]
    while queue:
        x = queue.pop(0)
        if x == v0:
            break
        for t, y in adj[x]:
            if y not in prev:
                prev[y] = (x, t)
                queue.append(y)
    if v0 not in prev:
        raise ValueError("edge endpoints in different tree components")
    path = []
    cur = v0
    while cur != u0:
        p, t = prev[cur]
        path.append(t)
        cur = p
    return path + [e]


def all_cycles(g: SignedGraph) -> list[CycleRef]:
    """Every simple cycle of g, by scanning the GF(2) cycle space."""
    tree = _spanning_forest(g)
    cotree = [e for e in range(g.m) if e not in set(tree)]
    dim = len(cotree)
    if dim > MAX_CYCLE_SPACE_DIM:
        raise DeskScaleError(f"cycle space dimension {dim} too large")
    fund = [frozenset(fundamental_cycle(g, tree, e)) for e in cotree]
    out = []
    for mask in range(1, 1 << dim):
        acc: frozenset[int] = frozenset()
        for i in range(dim):
            if mask >> i & 1:
                acc = acc ^ fund[i]
        if not acc:
            continue
        try:
            out.append(order_cycle(g, acc))
        except ValueError:
            continue
    out.sort(key=lambda c: (len(c), c.edges))
    return out


def find_negative_cycle(g: SignedGraph) -> Optional[CycleRef]:
    res = is_balanced(g)
    if res.balanced:
        return None
    return order_cycle(g, res.negative_cycle)


# -- thetas -------------------------------------------------------------------

@dataclass(frozen=True)
class Theta:
    """Three internally disjoint x-y paths, each an edge sequence."""

    x: int
    y: int
    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def find_theta(g: SignedGraph, x: int, y: int) -> Optional[Theta]:
    """Three internally vertex-disjoint x-y paths via unit-capacity
    augmenting paths on the vertex-split digraph (Menger)."""
    if x == y:
        raise ValueError("endpoints must differ")
    # nodes: (v, 0)=in and (v, 1)=out; arcs: in->out cap 1 (cap 3 for x, y),
    # each edge index e from u to v gives out(u)->in(v) and out(v)->in(u),
    # cap 1 each, tagged with e for the decomposition step.
    cap: dict[tuple, int] = {}
    init: dict[tuple, int] = {}
    adj: dict[tuple, list[tuple]] = {}
    tag: dict[tuple, int] = {}

    def add(a, b, c, e=None):
        cap[(a, b)] = cap.get((a, b), 0) + c
        init[(a, b)] = init.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        init.setdefault((b, a), 0)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
        if e is not None:
            tag[(a, b)] = e

    for v in range(g.n):
        add((v, 0), (v, 1), 3 if v in (x, y) else 1)
    for e, (u, v, _) in enumerate(g.edges):
        if u == v:
            continue
        add((u, 1), (v, 0), 1, e)
        add((v, 1), (u, 0), 1, e)
    src, snk = (x, 0), (y, 1)
    for _ in range(3):
        prev: dict[tuple, Optional[tuple]] = {src: None}
        queue = [src]
        while queue:
            a = queue.pop(0)
            if a == snk:
                break
            for b in adj.get(a, []):
                if b not in prev and cap.get((a, b), 0) > 0:
                    prev[b] = a
                    queue.append(b)
        if snk not in prev:
            return None
        b = snk
        while b != src:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
    flow = {arc: init[arc] - cap[arc] for arc in init if init[arc] - cap[arc] > 0}
    paths = []
    for _ in range(3):
        path_edges = []
        node = src
        while node != snk:
            nxt = None
            for b in adj.get(node, []):
                if flow.get((node, b), 0) > 0:
                    nxt = b
                    break
            if nxt is None:
                return None  # decomposition failed: should not happen
            flow[(node, nxt)] -= 1
            if (node, nxt) in tag:
                path_edges.append(tag[(node, nxt)])
            node = nxt
        paths.append(tuple(path_edges))
    return Theta(x, y, (paths[0], paths[1], paths[2]))


def _path_sign(g: SignedGraph, path: Sequence[int]) -> int:
    s = 1
    for e in path:
        s *= g.sigma(e)
    return s


def positive_cycle_in_theta(g: SignedGraph, theta: Theta) -> CycleRef:
    """Some pair of the three paths closes a positive cycle: an odd number
    of negative pair-cycles is impossible since signs multiply out."""
    signs = [_path_sign(g, p) for p in theta.paths]
    for i, j in itertools.combinations(range(3), 2):
        if signs[i] * signs[j] == PLUS:
            return order_cycle(g, set(theta.paths[i]) | set(theta.paths[j]))
    raise AssertionError("all three pair-cycles negative: impossible")


# -- bases ----------------------------------------------------------------------

def connected_base(g: SignedGraph) -> frozenset[int]:
    """Spanning tree, plus one extra edge closing a negative cycle when g
    is unbalanced.  The result has no positive cycle and no barbell."""
    if not g.is_connected():
        raise ValueError("graph must be connected")
    tree = _spanning_forest(g)
    if is_balanced(g).balanced:
        return frozenset(tree)
    for e in range(g.m):
        if e in set(tree):
            continue
        if cycle_sign(g, fundamental_cycle(g, tree, e)) == MINUS:
            return frozenset(tree) | {e}
    raise AssertionError("unbalanced graph with no negative fundamental cycle")


def contains_positive_cycle(g: SignedGraph, edge_set: Iterable[int]) -> bool:
    es = set(edge_set)
    for c in all_cycles(delete_edges(g, set(range(g.m)) - es).graph):
        if c.sign == PLUS:
            return True
    return False


# -- k-closure -------------------------------------------------------------------

@dataclass
class ClosureResult:
    closure: frozenset[int]
    steps: list[tuple[CycleRef, frozenset[int]]] = field(default_factory=list)
    """Each step is (positive cycle C_i, newly absorbed edges W_i)."""


def k_closure(g: SignedGraph, seed: Iterable[int], k: int,
              cycles: Optional[list[CycleRef]] = None) -> ClosureResult:
    """Least fixpoint of: absorb E(C) for any positive cycle C with
    1 <= |E(C) - S| <= k.  Order-independent; we scan shortest first."""
    if cycles is None:
        cycles = all_cycles(g)
    positive = [c for c in cycles if c.sign == PLUS]
    cur = set(seed)
    steps: list[tuple[CycleRef, frozenset[int]]] = []
    changed = True
    while changed:
        changed = False
        for c in positive:
            missing = c.edge_set - cur
            if 1 <= len(missing) <= k:
                cur |= missing
                steps.append((c, frozenset(missing)))
                changed = True
    return ClosureResult(frozenset(cur), steps)


def is_k_base(g: SignedGraph, B: Iterable[int], k: int) -> bool:
    return k_closure(g, B, k).closure == frozenset(range(g.m))


# -- bridges ---------------------------------------------------------------------

@dataclass(frozen=True)
class Bridge:
    vertices: frozenset[int]
    edges: frozenset[int]
    attachments: frozenset[int]  # vertices shared with the host subgraph

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.edges)


def bridges_of(g: SignedGraph, h_edges: Iterable[int]) -> list[Bridge]:
    """Bridges of the subgraph H: connected components of g - E(H) that
    contain at least one edge, with their attachment vertices on H."""
    h = set(h_edges)
    hv = set()
    for e in h:
        u, v = g.ends(e)
        hv.add(u)
        hv.add(v)
    rest = [e for e in range(g.m) if e not in h]
    # union-find over vertices using only non-H edges
    par = list(range(g.n))

    def find(x: int) -> int:
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    for e in rest:
        u, v = g.ends(e)
        par[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for e in rest:
        groups.setdefault(find(g.ends(e)[0]), []).append(e)
    out = []
    for es in groups.values():
        vs = set()
        for e in es:
            u, v = g.ends(e)
            vs.add(u)
            vs.add(v)
        out.append(Bridge(frozenset(vs), frozenset(es), frozenset(vs & hv)))
    out.sort(key=lambda b: (-b.size, min(b.attachments) if b.attachments else -1))
    return out


# -- peripheral cycles --------------------------------------------------------------

def is_peripheral(g: SignedGraph, c: CycleRef) -> bool:
    """Induced (chordless) and g - V(C) connected."""
    vc = set(c.vertices)
    for e, (u, v, _) in enumerate(g.edges):
        if e not in c.edge_set and u in vc and v in vc:
            return False  # chord
    comps = g.components(skip_vertices=vc)
    return len(comps) <= 1


def find_peripheral_cycle(
    g: SignedGraph,
    want_sign: Optional[int] = None,
    require_unbalanced_complement: bool = False,
    prefer_bridge_with: Optional[CycleRef] = None,
    cycles: Optional[list[CycleRef]] = None,
) -> Optional[CycleRef]:
    """First peripheral cycle of the requested sign, optionally with
    g - E(C) still unbalanced.

    With prefer_bridge_with set, candidates are ranked by the size of the
    bridge of C containing that cycle (largest first) -- the rerouting
    choice used when a protected negative cycle must stay intact.
    """
    if cycles is None:
        cycles = all_cycles(g)
    best: Optional[tuple] = None
    for c in cycles:
        if want_sign is not None and c.sign != want_sign:
            continue
        if not is_peripheral(g, c):
            continue
        if require_unbalanced_complement:
            if is_balanced(delete_edges(g, c.edge_set).graph).balanced:
                continue
        if prefer_bridge_with is None:
            return c
        rank = 0
        for b in bridges_of(g, c.edge_set):
            if prefer_bridge_with.edge_set <= b.edges:
                rank = b.size
                break
        key = (-rank, len(c), c.edges)
        if best is None or key < best[0]:
            best = (key, c)
    return best[1] if best else None


# -- negative suns -------------------------------------------------------------------

@dataclass(frozen=True)
class NegativeSun:
    """A negative cycle e_1..e_n (vertices v_1..v_n, e_i from v_i to
    v_{i+1}) with a pendant edge e_i' at each cycle vertex v_i."""

    cycle_edges: tuple[int, ...]
    cycle_vertices: tuple[int, ...]
    pendant_edges: tuple[int, ...]
    pendant_vertices: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.cycle_edges)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.cycle_edges) | frozenset(self.pendant_edges)

    def validate(self, g: SignedGraph) -> None:
        c = order_cycle(g, self.cycle_edges)
        if c.sign != MINUS:
            raise ValueError("sun cycle is not negative")
        n = self.n
        for i in range(n):
            vi = self.cycle_vertices[i]
            ei = self.cycle_edges[i]
            if vi not in g.ends(ei) or self.cycle_vertices[(i + 1) % n] not in g.ends(ei):
                raise ValueError("cycle labelling broken")
            pe = self.pendant_edges[i]
            if vi not in g.ends(pe):
                raise ValueError(f"pendant edge {pe} not at cycle vertex {vi}")
            if g.other_end(pe, vi) != self.pendant_vertices[i]:
                raise ValueError("pendant vertex mismatch")
            if self.pendant_vertices[i] in self.cycle_vertices:
                raise ValueError("pendant endpoint lies on the cycle")


def build_negative_sun(n: int) -> tuple[SignedGraph, NegativeSun]:
    """H_n: negative n-cycle v_1..v_n (only e_1 negative) with one pendant
    edge at each cycle vertex.  Vertices 0..n-1 are the cycle, n..2n-1 the
    pendant tips; edges 0..n-1 are e_1..e_n, edges n..2n-1 are e_1'..e_n'."""
    if n < 3:
        raise ValueError("need n >= 3")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n, MINUS if i == 0 else PLUS))
    for i in range(n):
        edges.append((i, n + i, PLUS))
    g = SignedGraph(2 * n, tuple(edges))
    sun = NegativeSun(
        cycle_edges=tuple(range(n)),
        cycle_vertices=tuple(range(n)),
        pendant_edges=tuple(range(n, 2 * n)),
        pendant_vertices=tuple(range(n, 2 * n)),
    )
    return g, sun


def as_negative_sun(g: SignedGraph, edge_set: Iterable[int]) -> Optional[NegativeSun]:
    """Interpret an edge set as a negative sun if it has that shape:
    degree-3 vertices forming a single negative cycle, each carrying
    exactly one pendant edge whose far end is off the cycle."""
    es = set(edge_set)
    deg: dict[int, int] = {}
    for e in es:
        u, v = g.ends(e)
        if u == v:
            return None
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    cyc_vs = {v for v, d in deg.items() if d == 3}
    cyc_edges = {e for e in es if all(x in cyc_vs for x in g.ends(e))}
    pend = es - cyc_edges
    if not cyc_edges:
        return None
    try:
        c = order_cycle(g, cyc_edges)
    except ValueError:
        return None
    if set(c.vertices) != cyc_vs or c.sign != MINUS:
        return None
    if len(pend) != len(cyc_vs):
        return None
    pend_at: dict[int, int] = {}
    for e in pend:
        u, v = g.ends(e)
        on = [x for x in (u, v) if x in cyc_vs]
        if len(on) != 1:
            return None
        if on[0] in pend_at:
            return None
        pend_at[on[0]] = e
    pes = tuple(pend_at[v] for v in c.vertices)
    pvs = tuple(g.other_end(pend_at[v], v) for v in c.vertices)
    return NegativeSun(c.edges, c.vertices, pes, pvs)


def find_negative_sun(g: SignedGraph) -> Optional[NegativeSun]:
    """Locate a negative sun: a negative cycle plus one off-cycle edge per
    cycle vertex (pendant tips may coincide -- degenerate suns allowed)."""
    for c in all_cycles(g):
        if c.sign != MINUS:
            continue
        pes = []
        pvs = []
        ok = True
        for v in c.vertices:
            cand = [e for e in g.incident_edges(v)
                    if e not in c.edge_set and not g.is_loop(e)
                    and g.other_end(e, v) not in c.vertices]
            if not cand:
                ok = False
                break
            pes.append(cand[0])
            pvs.append(g.other_end(cand[0], v))
        if ok and len(set(pes)) == len(pes):
            return NegativeSun(c.edges, c.vertices, tuple(pes), tuple(pvs))
    return None
