"""Finite abelian groups, edge/vertex maps, flows and boundaries.

Groups are direct sums of cyclic groups Z_{n1} x ... x Z_{nr}; elements are
plain tuples of residues (mixed radix).  Elements are ordered
lexicographically, which fixes every "least valid value" choice made by
the flow constructors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .core import Orientation, SignedGraph

Elem = Tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors or any(n < 2 for n in self.factors):
            raise ValueError("factors must all be >= 2")

    @property
    def order(self) -> int:
        out = 1
        for n in self.factors:
            out *= n
        return out

    @property
    def zero(self) -> Elem:
        return (0,) * len(self.factors)

    def elements(self) -> Iterator[Elem]:
        """All elements in lexicographic order."""
        return itertools.product(*(range(n) for n in self.factors))

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a: Elem) -> Elem:
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.factors))

    def smul(self, k: int, a: Elem) -> Elem:
        return tuple((k * x) % n for x, n in zip(a, self.factors))

    def contains(self, a: Elem) -> bool:
        return len(a) == len(self.factors) and all(0 <= x < n for x, n in zip(a, self.factors))

    def sum(self, items: Iterable[Elem]) -> Elem:
        out = self.zero
        for a in items:
            out = self.add(out, a)
        return out

    def halving_preimages(self, a: Elem) -> list[Elem]:
        """All x with 2x = a (dense doubling table; groups here are small)."""
        return [x for x in self.elements() if self.add(x, x) == a]

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.factors)


def parse_group(spec: str) -> AbelianGroup:
    """Parse specs like ``Z6``, ``Z2xZ2``, ``Z2xZ4``."""
    parts = spec.strip().split("x")
    factors = []
    for p in parts:
        p = p.strip()
        if not p or p[0] not in "Zz" or not p[1:].isdigit():
            raise ValueError(f"bad group spec {spec!r}")
        factors.append(int(p[1:]))
    return AbelianGroup(tuple(factors))


# -- subgroup / quotient machinery -------------------------------------------

def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and _smallest_prime_factor(n) == n


@dataclass(frozen=True)
class MinimalSubgroup:
    """A subgroup N of prime order p = smallest prime dividing |A|, together
    with quotient access A -> A/N.

    N is generated inside the first cyclic factor whose order p divides:
    N = <(0,...,n_i/p,...,0)>.  The quotient replaces that factor's order
    n_i by n_i/p (dropping it when n_i = p), so quotient elements are again
    plain tuples, and the coset representative map embeds a quotient tuple
    back with the reduced coordinate unchanged.  That representative is the
    lexicographically least element of its coset.
    """

    group: AbelianGroup
    p: int
    factor_index: int

    @property
    def elements(self) -> tuple[Elem, ...]:
        A = self.group
        i = self.factor_index
        step = A.factors[i] // self.p
        out = []
        for k in range(self.p):
            e = [0] * len(A.factors)
            e[i] = k * step
            out.append(tuple(e))
        return tuple(out)

    @property
    def quotient(self) -> AbelianGroup:
        A = self.group
        i = self.factor_index
        reduced = A.factors[i] // self.p
        if reduced == 1:
            facs = A.factors[:i] + A.factors[i + 1:]
            if not facs:
                raise ValueError("quotient is trivial")
            return AbelianGroup(facs)
        return AbelianGroup(A.factors[:i] + (reduced,) + A.factors[i + 1:])

    def project(self, a: Elem) -> Elem:
        i = self.factor_index
        reduced = self.group.factors[i] // self.p
        if reduced == 1:
            return a[:i] + a[i + 1:]
        return a[:i] + (a[i] % reduced,) + a[i + 1:]

    def represent(self, q: Elem) -> Elem:
        """Lexicographically least a in A with project(a) = q."""
        i = self.factor_index
        reduced = self.group.factors[i] // self.p
        if reduced == 1:
            return q[:i] + (0,) + q[i:]
        return q

    def same_coset(self, a: Elem, b: Elem) -> bool:
        return self.project(a) == self.project(b)


def minimal_subgroup(A: AbelianGroup) -> MinimalSubgroup:
    """Subgroup of smallest prime order p | |A|; requires |A| composite."""
    if is_prime(A.order):
        raise ValueError(f"|A| = {A.order} is prime; no proper nontrivial subgroup")
    p = _smallest_prime_factor(A.order)
    for i, n in enumerate(A.factors):
        if n % p == 0:
            return MinimalSubgroup(A, p, i)
    raise AssertionError("p divides |A| but no factor order")


# -- flows and boundaries ------------------------------------------------------

def boundary(g: SignedGraph, tau: Orientation, f: Sequence[Elem], A: AbelianGroup) -> list[Elem]:
    """Boundary of an edge map: bd(v) = sum over half-edges h at v of tau(h) f(e_h).

    Both half-edges of a loop contribute, so a negative loop with both
    halves outward contributes 2 f(e).
    """
    if len(f) != g.m:
        raise ValueError("edge map not total")
    out = [A.zero for _ in range(g.n)]
    for e in range(g.m):
        for h in (2 * e, 2 * e + 1):
            v = g.halfedge_vertex(h)
            val = f[e] if tau(h) == 1 else A.neg(f[e])
            out[v] = A.add(out[v], val)
    return out


def is_flow(g: SignedGraph, tau: Orientation, f: Sequence[Elem], A: AbelianGroup) -> bool:
    return all(b == A.zero for b in boundary(g, tau, f, A))


def is_nowhere_zero(f: Sequence[Elem], A: AbelianGroup) -> bool:
    return all(v != A.zero for v in f)


def is_A_boundary(A: AbelianGroup, beta: Sequence[Elem]) -> Optional[Elem]:
    """If sum(beta) = 2a for some a, return the lexicographically least
    such a; otherwise None."""
    total = A.sum(beta)
    pre = A.halving_preimages(total)
    return min(pre) if pre else None


def integer_boundary(g: SignedGraph, tau: Orientation, f: Sequence[int]) -> list[int]:
    out = [0] * g.n
    for e in range(g.m):
        for h in (2 * e, 2 * e + 1):
            out[g.halfedge_vertex(h)] += tau(h) * f[e]
    return out


def is_integer_k_flow(g: SignedGraph, tau: Orientation, f: Sequence[int], k: int) -> bool:
    if any(abs(v) >= k for v in f):
        return False
    return all(b == 0 for b in integer_boundary(g, tau, f))


# -- map IO ---------------------------------------------------------------------

def parse_map(text: str, A: AbelianGroup, size: int) -> list[Elem]:
    """Edge/vertex map format: one line per entry, ``<index> <c,c,...>``
    with 0-based indices; missing indices default to zero."""
    vals: list[Elem] = [A.zero] * size
    seen = set()
    for lineno, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<index> <coords>'")
        idx = int(parts[0])
        coords = tuple(int(c) for c in parts[1].split(","))
        if not (0 <= idx < size):
            raise ValueError(f"line {lineno}: index {idx} out of range")
        if not A.contains(coords):
            raise ValueError(f"line {lineno}: {coords} not in {A}")
        if idx in seen:
            raise ValueError(f"line {lineno}: duplicate index {idx}")
        seen.add(idx)
        vals[idx] = coords
    return vals


def format_map(vals: Sequence[Elem]) -> str:
    return "\n".join(f"{i} {','.join(map(str, v))}" for i, v in enumerate(vals)) + "\n"
