"""Embedded graphs, oriented duals, and the flow <-> coloring dictionary.

Embeddings are combinatorial schemes: a cyclic half-edge rotation per
vertex plus a per-edge sign (-1 = the edge passes through the cross-cap).
Faces come from the standard trace: from state (h, side) move to the
partner half-edge, multiply the side by the edge's embedding sign, and
take the rotation successor (or predecessor on the flipped side).  Each
face is traced twice, once per direction; orbits are paired off by the
time-reversal map (h, s) -> (partner(h), -s * sign(e)).

The oriented dual takes one vertex per face.  A primal edge e, directed by
a reference orientation, either agrees with the boundary walk of a face or
not; the dual edge is positive toward the unique agreeing face, or
negative (both ends in, or both ends out) when the counts are 2 or 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import (MINUS, PLUS, Orientation, SignedGraph, is_balanced,
                   signatures_equivalent)
from .groups import AbelianGroup, Elem

PLANE = "plane"
PROJECTIVE = "projective"


@dataclass(frozen=True)
class EmbeddedGraph:
    graph: SignedGraph  # signature unused by the embedding; primal is unsigned
    rotation: tuple[tuple[int, ...], ...]  # cyclic half-edge order per vertex
    edge_sign: tuple[int, ...]  # embedding signs, -1 = through the cross-cap
    surface: str

    def __post_init__(self):
        if self.surface not in (PLANE, PROJECTIVE):
            raise ValueError(f"unknown surface {self.surface!r}")
        seen = set()
        for v, rot in enumerate(self.rotation):
            for h in rot:
                if self.graph.halfedge_vertex(h) != v:
                    raise ValueError(f"half-edge {h} listed at wrong vertex {v}")
                if h in seen:
                    raise ValueError(f"half-edge {h} listed twice")
                seen.add(h)
        if len(seen) != 2 * self.graph.m:
            raise ValueError("rotation system does not cover all half-edges")
        if len(self.edge_sign) != self.graph.m:
            raise ValueError("edge_sign must be total")

    def expected_faces(self) -> int:
        euler = 2 if self.surface == PLANE else 1
        return euler - self.graph.n + self.graph.m


@dataclass
class Face:
    """One face as its boundary walk of (half-edge, side) states; the state
    (h, s) stands for traversing h's edge away from h's endpoint."""

    states: tuple[tuple[int, int], ...]

    def half_edges(self) -> tuple[int, ...]:
        return tuple(h for h, _ in self.states)


def _rot_step(eg: EmbeddedGraph, h: int, direction: int) -> int:
    rot = eg.rotation[eg.graph.halfedge_vertex(h)]
    i = rot.index(h)
    return rot[(i + direction) % len(rot)]


def _partner(h: int) -> int:
    return h ^ 1


def _next_state(eg: EmbeddedGraph, h: int, s: int) -> tuple[int, int]:
    hb = _partner(h)
    s2 = s * eg.edge_sign[h // 2]
    return _rot_step(eg, hb, 1 if s2 == 1 else -1), s2


def _mirror(eg: EmbeddedGraph, h: int, s: int) -> tuple[int, int]:
    """Time reversal of the face trace: conjugating the successor map by
    this involution inverts it, so each face appears as a mirror pair of
    orbits (the two traversal directions)."""
    return _partner(h), -s * eg.edge_sign[h // 2]


def trace_faces(eg: EmbeddedGraph) -> list[Face]:
    """All faces; raises if the Euler count does not match the surface."""
    todo = {(h, s) for h in range(2 * eg.graph.m) for s in (1, -1)}
    orbits: list[tuple[tuple[int, int], ...]] = []
    orbit_of: dict[tuple[int, int], int] = {}
    while todo:
        start = min(todo)
        cur = start
        walk = []
        while True:
            walk.append(cur)
            todo.discard(cur)
            orbit_of[cur] = len(orbits)
            cur = _next_state(eg, *cur)
            if cur == start:
                break
        orbits.append(tuple(walk))
    # pair each orbit with its mirror image (the same face, other direction)
    faces: list[Face] = []
    taken = set()
    for i, orb in enumerate(orbits):
        if i in taken:
            continue
        h, s = orb[0]
        j = orbit_of[_mirror(eg, h, s)]
        if j == i:
            raise ValueError("self-paired face walk: corrupted embedding data")
        taken.add(i)
        taken.add(j)
        faces.append(Face(orb))
    if len(faces) != eg.expected_faces():
        raise ValueError(
            f"Euler mismatch: traced {len(faces)} faces, expected"
            f" {eg.expected_faces()} on the {eg.surface}")
    return faces


@dataclass
class DualResult:
    graph: SignedGraph  # one vertex per face; edge index = primal edge index
    tau: Orientation
    faces: list[Face]
    face_choice: tuple[int, ...]  # +1 = canonical walk direction, -1 = mirrored


def oriented_dual(eg: EmbeddedGraph,
                  face_choice: Optional[Sequence[int]] = None) -> DualResult:
    """Dual signed graph with the agreement rule.

    The primal reference orientation directs every edge from its first
    stored endpoint to its second, i.e. along half-edge 2e.  A face
    "agrees" with e if its chosen boundary walk traverses e in that
    direction (its walk contains a state on half-edge 2e).
    """
    faces = trace_faces(eg)
    if face_choice is None:
        face_choice = tuple(1 for _ in faces)
    face_choice = tuple(face_choice)
    if len(face_choice) != len(faces):
        raise ValueError("face_choice size mismatch")

    def oriented_states(i: int) -> tuple[tuple[int, int], ...]:
        if face_choice[i] == 1:
            return faces[i].states
        return tuple(_mirror(eg, h, s) for h, s in faces[i].states)

    # Each edge e has two "sides": the mirror-pairs {(2e,+),(2e+1,-lam)}
    # and {(2e,-),(2e+1,+lam)}.  side_face[e][k] = face owning side k;
    # agree[e][k] = whether that face's oriented walk runs along 2e.
    m = eg.graph.m
    side_face = [[-1, -1] for _ in range(m)]
    agree = [[False, False] for _ in range(m)]
    for i in range(len(faces)):
        for h, s in oriented_states(i):
            e = h // 2
            if h % 2 == 0:
                k = 0 if s == 1 else 1
            else:
                k = 0 if s == -eg.edge_sign[e] else 1
            side_face[e][k] = i
            agree[e][k] = (h % 2 == 0)

    edges = []
    tau_bits = []
    for e in range(m):
        f1, f2 = side_face[e]
        a1, a2 = agree[e]
        if a1 != a2:
            sign = PLUS
            # positive edge directed toward the agreeing face
            t1, t2 = (-1, 1) if a1 else (1, -1)
        elif a1:  # both agree
            sign = MINUS
            t1 = t2 = -1
        else:  # neither agrees
            sign = MINUS
            t1 = t2 = 1
        edges.append((f1, f2, sign))
        tau_bits.extend([t1, t2])
    dual = SignedGraph(len(faces), tuple(edges))
    tau = Orientation(tuple(tau_bits))
    tau.check(dual)
    return DualResult(dual, tau, faces, face_choice)


def to_default_orientation(g: SignedGraph, tau: Orientation,
                           f: Sequence[Elem], A: AbelianGroup) -> list[Elem]:
    """Re-express edge values w.r.t. the default orientation: any two
    orientations of the same signed graph differ by full-edge flips, and a
    flip is compensated by negating the value."""
    default = Orientation.default(g)
    return [f[e] if tau(2 * e) == default(2 * e) else A.neg(f[e])
            for e in range(g.m)]


def flow_from_coloring(eg: EmbeddedGraph, dual: DualResult,
                       c: Sequence[Elem], A: AbelianGroup) -> list[Elem]:
    """Tension-to-flow: the dual edge of primal uv (directed u -> v) takes
    the value c(v) - c(u); the result is a flow on the dual in its own
    orientation, returned re-expressed in the default orientation."""
    g = eg.graph
    vals = []
    for e in range(g.m):
        u, v = g.ends(e)
        vals.append(A.sub(c[v], c[u]))
    return to_default_orientation(dual.graph, dual.tau, vals, A)


def coloring_from_flow(eg: EmbeddedGraph, dual: DualResult,
                       f: Sequence[Elem], A: AbelianGroup) -> list[Elem]:
    """Flow-to-tension: recover c with c(v) - c(u) = value on the dual edge
    of uv.  On the projective plane this needs A without order-2 elements
    (a closed walk picks up a discrepancy d with 2d = 0).
    Input f is in the default orientation of the dual."""
    if eg.surface == PROJECTIVE:
        if any(x != A.zero and A.add(x, x) == A.zero for x in A.elements()):
            raise ValueError("projective potentials need a group without"
                             " order-2 elements")
    # back to the dual's own orientation, then read tensions
    vals = to_default_orientation(dual.graph, dual.tau, f, A)
    g = eg.graph
    c: list[Optional[Elem]] = [None] * g.n
    c[0] = A.zero
    stack = [0]
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n)}
    for e, (u, v, _) in enumerate(g.edges):
        adj[u].append((e, v))
        adj[v].append((e, u))
    while stack:
        x = stack.pop()
        for e, y in adj[x]:
            if c[y] is not None:
                continue
            u, v = g.ends(e)
            if x == u:
                c[y] = A.add(c[x], vals[e])
            else:
                c[y] = A.sub(c[x], vals[e])
            stack.append(y)
    if any(x is None for x in c):
        raise ValueError("primal graph is disconnected")
    for e, (u, v, _) in enumerate(g.edges):
        if A.sub(c[v], c[u]) != vals[e]:
            raise ValueError(f"input is not a flow: tension mismatch on edge {e}")
    return c  # type: ignore[return-value]


# -- dual <-> target correspondence ----------------------------------------------

@dataclass
class DualCorrespondence:
    """Exact match between an embedding's oriented dual and a target signed
    graph: the relabelled dual equals the target edge for edge."""

    embedding: EmbeddedGraph
    dual: DualResult
    target: SignedGraph
    face_to_target: tuple[int, ...]  # dual vertex (face) -> target vertex
    edge_to_target: tuple[int, ...]  # primal/dual edge -> target edge
    value_sign: tuple[int, ...]  # +1/-1 factor when moving values across

    def push_flow(self, f_dual_default: Sequence[Elem], A: AbelianGroup) -> list[Elem]:
        out: list[Elem] = [A.zero] * self.target.m
        for e in range(len(f_dual_default)):
            v = f_dual_default[e]
            out[self.edge_to_target[e]] = v if self.value_sign[e] == 1 else A.neg(v)
        return out

    def pull_map(self, f_target: Sequence[Elem], A: AbelianGroup) -> list[Elem]:
        out = []
        for e in range(self.dual.graph.m):
            v = f_target[self.edge_to_target[e]]
            out.append(v if self.value_sign[e] == 1 else A.neg(v))
        return out


def _isomorphisms(g1: SignedGraph, g2: SignedGraph):
    """Backtracking vertex bijections preserving underlying adjacency
    (multiplicity-aware, signs ignored).  Desk scale only."""
    if g1.n != g2.n or g1.m != g2.m:
        return
    adj1 = [[0] * g1.n for _ in range(g1.n)]
    adj2 = [[0] * g2.n for _ in range(g2.n)]
    for u, v, _ in g1.edges:
        adj1[u][v] += 1
        adj1[v][u] += 1
    for u, v, _ in g2.edges:
        adj2[u][v] += 1
        adj2[v][u] += 1
    deg1 = [sum(r) for r in adj1]
    deg2 = [sum(r) for r in adj2]
    phi: list[Optional[int]] = [None] * g1.n
    used = [False] * g2.n

    def rec(i: int):
        if i == g1.n:
            yield tuple(phi)  # type: ignore[misc]
            return
        for w in range(g2.n):
            if used[w] or deg1[i] != deg2[w]:
                continue
            ok = True
            for j in range(i):
                if adj1[i][j] != adj2[w][phi[j]]:
                    ok = False
                    break
            if ok:
                phi[i] = w
                used[w] = True
                yield from rec(i + 1)
                used[w] = False
                phi[i] = None

    yield from rec(0)


def match_dual(eg: EmbeddedGraph, target: SignedGraph) -> DualCorrespondence:
    """Find face orientations and a relabelling under which the oriented
    dual of eg is exactly the target signed graph."""
    base = oriented_dual(eg)
    for phi in _isomorphisms(base.graph, target):
        relabel = SignedGraph(target.n, tuple(
            sorted(((min(phi[u], phi[v]), max(phi[u], phi[v]), s)
                    for u, v, s in base.graph.edges))))
        # compare signatures on the same underlying graph
        tgt_sorted = SignedGraph(target.n, tuple(
            sorted((min(u, v), max(u, v), s) for u, v, s in target.edges)))
        if not relabel.same_underlying(tgt_sorted):
            continue
        eq = signatures_equivalent(relabel, tgt_sorted)
        if not eq.equivalent:
            continue
        # flipping a face's orientation switches the dual at that vertex
        flips = tuple(-1 if phi[i] in eq.switching_set else 1
                      for i in range(base.graph.n))
        dual = oriented_dual(eg, flips)
        # build the exact edge correspondence and value signs
        used = [False] * target.m
        edge_map = []
        value_sign = []
        for e in range(dual.graph.m):
            a, b = dual.graph.ends(e)
            s = dual.graph.sigma(e)
            ta, tb = phi[a], phi[b]
            hit = None
            for te, (u, v, s2) in enumerate(target.edges):
                if used[te] or s2 != s:
                    continue
                if (u, v) == (ta, tb):
                    hit = (te, 1)
                    break
                if (u, v) == (tb, ta):
                    # reversed storage: harmless for negative edges, value
                    # negation for positive ones
                    hit = (te, 1 if s == MINUS else -1)
                    break
            if hit is None:
                break
            used[hit[0]] = True
            edge_map.append(hit[0])
            value_sign.append(hit[1])
        if len(edge_map) != dual.graph.m:
            continue
        return DualCorrespondence(eg, dual, target, tuple(phi),
                                  tuple(edge_map), tuple(value_sign))
    raise ValueError("no face orientation/relabelling matches the target")


# -- the K6 / Petersen bundle -------------------------------------------------------

def canonical_ps() -> SignedGraph:
    """Petersen graph: vertices 0-4 an (all-negative) outer 5-cycle,
    vertices 5-9 the inner pentagram, positive spokes.  Edges 0-4 cycle,
    5-9 spokes, 10-14 pentagram."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5, MINUS))
    for i in range(5):
        edges.append((i, 5 + i, PLUS))
    for i in range(5):
        edges.append((5 + i, 5 + (i + 2) % 5, PLUS))
    return SignedGraph(10, tuple(edges))


_PHI = (1 + math.sqrt(5)) / 2


def _icosahedron_points() -> list[tuple[float, float, float]]:
    pts = []
    for a, b in itertools.product((1.0, -1.0), repeat=2):
        pts.append((0.0, a, b * _PHI))
        pts.append((a, b * _PHI, 0.0))
        pts.append((b * _PHI, 0.0, a))
    return pts


def _dot(p, q):
    return sum(x * y for x, y in zip(p, q))


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0])


def k6_projective_embedding() -> EmbeddedGraph:
    """K6 on the projective plane as the antipodal quotient of the
    icosahedron: the 6 antipodal point pairs are the vertices, the 30
    icosahedral edges fold to the 15 edges of K6, and an edge gets
    embedding sign -1 when it runs from a representative point to the
    antipode of the other representative."""
    pts = _icosahedron_points()
    neg = {i: pts.index(tuple(-x for x in pts[i])) for i in range(12)}
    reps: list[int] = []
    assigned: dict[int, int] = {}
    for i in range(12):
        if i not in assigned:
            assigned[i] = len(reps)
            assigned[neg[i]] = len(reps)
            reps.append(i)
    edge_index: dict[tuple[int, int], int] = {}
    edges = []
    for a, b in itertools.combinations(range(6), 2):
        edge_index[(a, b)] = len(edges)
        edges.append((a, b, PLUS))
    g = SignedGraph(6, tuple(edges))

    def adjacent(i: int, j: int) -> bool:
        d2 = sum((x - y) ** 2 for x, y in zip(pts[i], pts[j]))
        return abs(d2 - 4.0) < 1e-6

    edge_sign = [PLUS] * 15
    for (a, b), e in edge_index.items():
        if not adjacent(reps[a], reps[b]):
            edge_sign[e] = MINUS

    rotation = []
    for a in range(6):
        p = pts[reps[a]]
        nbrs = [j for j in range(12) if adjacent(reps[a], j)]
        # order neighbours by angle in the tangent plane at p
        u1 = _cross(p, pts[nbrs[0]])
        norm = math.sqrt(_dot(u1, u1))
        u1 = tuple(x / norm for x in u1)
        u2 = _cross(tuple(x / math.sqrt(_dot(p, p)) for x in p), u1)
        ang = []
        for j in nbrs:
            q = pts[j]
            ang.append((math.atan2(_dot(q, u2), _dot(q, u1)), j))
        ang.sort()
        rot = []
        for _, j in ang:
            b = assigned[j]
            key = (min(a, b), max(a, b))
            e = edge_index[key]
            rot.append(2 * e if a == key[0] else 2 * e + 1)
        rotation.append(tuple(rot))
    return EmbeddedGraph(g, tuple(rotation), tuple(edge_sign), PROJECTIVE)


def build_ps() -> DualCorrespondence:
    """The projective K6 embedding together with face orientations and a
    relabelling under which its oriented dual is exactly canonical_ps()."""
    return match_dual(k6_projective_embedding(), canonical_ps())


# -- embedding text format -----------------------------------------------------------

def parse_emb(text: str) -> EmbeddedGraph:
    """Embedding format: ``emb <surface> <n> <m>``, one ``r <v> <h...>``
    line per vertex (1-based vertices; half-edges 1-based, edge e owning
    2e-1 and 2e), one ``s <e> <+|->`` line per edge."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty embedding file")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 4 or parts[0] != "emb":
        raise ValueError(f"line {no}: expected 'emb <surface> <n> <m>'")
    surface, n, m = parts[1], int(parts[2]), int(parts[3])
    rotation: list[Optional[tuple[int, ...]]] = [None] * n
    edge_sign = [PLUS] * m
    halfedge_vertex: dict[int, int] = {}
    for no, ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "r":
            v = int(parts[1]) - 1
            hs = tuple(int(x) - 1 for x in parts[2:])
            if not (0 <= v < n) or rotation[v] is not None:
                raise ValueError(f"line {no}: bad or repeated rotation line")
            for h in hs:
                if not (0 <= h < 2 * m) or h in halfedge_vertex:
                    raise ValueError(f"line {no}: bad half-edge {h + 1}")
                halfedge_vertex[h] = v
            rotation[v] = hs
        elif parts[0] == "s":
            if len(parts) != 3 or parts[2] not in "+-":
                raise ValueError(f"line {no}: expected 's <e> <+|->'")
            e = int(parts[1]) - 1
            if not (0 <= e < m):
                raise ValueError(f"line {no}: edge {e + 1} out of range")
            edge_sign[e] = PLUS if parts[2] == "+" else MINUS
        else:
            raise ValueError(f"line {no}: unknown record {parts[0]!r}")
    if any(r is None for r in rotation) or len(halfedge_vertex) != 2 * m:
        raise ValueError("incomplete rotation data")
    edges = []
    for e in range(m):
        edges.append((halfedge_vertex[2 * e], halfedge_vertex[2 * e + 1], PLUS))
    g = SignedGraph(n, tuple(edges))
    return EmbeddedGraph(g, tuple(r for r in rotation), tuple(edge_sign), surface)


def format_emb(eg: EmbeddedGraph) -> str:
    out = [f"emb {eg.surface} {eg.graph.n} {eg.graph.m}"]
    for v, rot in enumerate(eg.rotation):
        out.append("r " + str(v + 1) + " " + " ".join(str(h + 1) for h in rot))
    for e, s in enumerate(eg.edge_sign):
        out.append(f"s {e + 1} {'+' if s == PLUS else '-'}")
    return "\n".join(out) + "\n"
