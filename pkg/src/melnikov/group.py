"""The group Z^m x| Z/2, the edge sets X_q and complete colored marked graphs.

A group element is a pair ``(a, sigma)``; the product is
``(a, s)(b, r) = (a + s*b, s*r)``.  Edges act on the left: ``y = l*x`` with
``l = (n, +1)`` for black edges and ``l = (n, -1)`` for red ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

BLACK = "black"
RED = "red"

__all__ = [
    "BLACK",
    "RED",
    "GElem",
    "Edge",
    "MarkedGraph",
    "UnionFind",
    "g_mul",
    "g_inv",
    "g_act_right",
    "enumerate_edges",
    "brute_force_edges",
    "edge_set",
    "adjacency",
    "complete_graph",
    "connected_components",
    "canonicalize",
]


@dataclass(frozen=True, order=True)
class GElem:
    a: tuple[int, ...]
    sigma: int = 1

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")
        if not isinstance(self.a, tuple):
            object.__setattr__(self, "a", tuple(self.a))

    @classmethod
    def identity(cls, m: int) -> "GElem":
        return cls((0,) * m, 1)

    @property
    def m(self) -> int:
        return len(self.a)

    def __mul__(self, other: "GElem") -> "GElem":
        return g_mul(self, other)

    def to_json(self) -> dict:
        return {"a": list(self.a), "sigma": self.sigma}


@dataclass(frozen=True, order=True)
class Edge:
    """A marking ``l`` in Z^m; black when its mass is 0, red when -2."""

    n: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, tuple):
            object.__setattr__(self, "n", tuple(self.n))
        if sum(self.n) not in (0, -2):
            raise ValueError(f"edge {self.n} has mass {sum(self.n)}, expected 0 or -2")

    @property
    def color(self) -> str:
        return BLACK if sum(self.n) == 0 else RED

    @property
    def sigma(self) -> int:
        return 1 if self.color == BLACK else -1

    @property
    def mass(self) -> int:
        return sum(self.n)

    @property
    def plus(self) -> tuple[int, ...]:
        return tuple(max(x, 0) for x in self.n)

    @property
    def minus(self) -> tuple[int, ...]:
        return tuple(max(-x, 0) for x in self.n)

    @property
    def support(self) -> tuple[int, ...]:
        """1-based indices with nonzero entries."""
        return tuple(i + 1 for i, x in enumerate(self.n) if x)

    @property
    def l1(self) -> int:
        return sum(abs(x) for x in self.n)

    def as_gelem(self) -> GElem:
        return GElem(self.n, self.sigma)

    def is_valid(self, q: int) -> bool:
        n = self.n
        if self.l1 > 2 * q or not any(n):
            return False
        if sum(n) == -2 and sum(1 for x in n if x) == 1:
            return False  # -2 e_i
        return True

    def to_json(self) -> dict:
        return {"n": list(self.n), "color": self.color}


def _check_m(x: GElem, y: GElem) -> None:
    if len(x.a) != len(y.a):
        raise ValueError(f"length mismatch: {len(x.a)} != {len(y.a)}")


def g_mul(x: GElem, y: GElem) -> GElem:
    _check_m(x, y)
    s = x.sigma
    return GElem(tuple(a + s * b for a, b in zip(x.a, y.a)), s * y.sigma)


def g_inv(x: GElem) -> GElem:
    # (a, s)^-1 = (-s a, s)
    s = x.sigma
    return GElem(tuple(-s * a for a in x.a), s)


def g_act_right(x: GElem, g: GElem) -> GElem:
    """Right action ``x -> x*g``; ``tau = (0, -1)`` flips the sign."""
    return g_mul(x, g)


@lru_cache(maxsize=None)
def enumerate_edges(q: int, m: int) -> tuple[Edge, ...]:
    """All of X_q in Z^m, sorted.

    Closed-form description: ``|l|_1 <= 2q``, mass in {0, -2},
    ``l != 0, -2e_i``.  Every such ``l`` is a signed sum of exactly 2q basis
    vectors: ``|l|_1`` has the parity of the mass, so the deficit
    ``2q - |l|_1`` is even and is filled with cancelling pairs ``+e_1 - e_1``.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if m < 2:
        raise ValueError("m must be >= 2: every edge has support of size >= 2")
    out = []
    for vec in _l1_ball(m, 2 * q):
        if sum(vec) not in (0, -2):
            continue
        e = Edge(vec)
        if e.is_valid(q):
            out.append(e)
    return tuple(sorted(out))


def _l1_ball(m: int, radius: int):
    if m == 0:
        yield ()
        return
    for x in range(-radius, radius + 1):
        for rest in _l1_ball(m - 1, radius - abs(x)):
            yield (x,) + rest


def brute_force_edges(q: int, m: int) -> set[Edge]:
    """Literal sums of 2q signed basis vectors, filtered by the edge rules."""
    out = set()
    signed = [(i, s) for i in range(m) for s in (1, -1)]
    for combo in itertools.combinations_with_replacement(signed, 2 * q):
        vec = [0] * m
        for i, s in combo:
            vec[i] += s
        if sum(vec) not in (0, -2) or not any(vec):
            continue
        if sum(vec) == -2 and sum(1 for x in vec if x) == 1:
            continue
        out.add(Edge(tuple(vec)))
    return out


@lru_cache(maxsize=None)
def edge_set(q: int, m: int) -> frozenset:
    return frozenset(e.n for e in enumerate_edges(q, m))


def _in_xq(n: tuple[int, ...], q: int) -> bool:
    if not any(n):
        return False
    mass = sum(n)
    if mass not in (0, -2):
        return False
    if sum(abs(x) for x in n) > 2 * q:
        return False
    if mass == -2 and sum(1 for x in n if x) == 1:
        return False
    return True


def adjacency(x: GElem, y: GElem, q: int) -> Edge | None:
    """The marking ``l`` with ``y = l*x``, or ``None`` if not adjacent."""
    _check_m(x, y)
    if x.sigma == y.sigma:
        n = tuple(b - a for a, b in zip(x.a, y.a))
        if sum(n) != 0:
            return None
    else:
        n = tuple(b + a for a, b in zip(x.a, y.a))
        if sum(n) != -2:
            return None
    if not _in_xq(n, q):
        return None
    return Edge(n)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return sorted(out.values())


@dataclass(frozen=True)
class MarkedGraph:
    """Complete marked graph: the full subgraph of the Cayley graph on ``vertices``.

    Adjacency is derived from the vertex set and never stored.
    """

    vertices: tuple[GElem, ...]
    q: int
    m: int
    _edges: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        vs = tuple(sorted(self.vertices))
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertices")
        for v in vs:
            if len(v.a) != self.m:
                raise ValueError("vertex length does not match m")
        object.__setattr__(self, "vertices", vs)
        if self._edges is None:
            edges = []
            for i, j in itertools.combinations(range(len(vs)), 2):
                e = adjacency(vs[i], vs[j], self.q)
                if e is not None:
                    edges.append((i, j, e))
            object.__setattr__(self, "_edges", tuple(edges))

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @property
    def edges(self) -> tuple[tuple[int, int, Edge], ...]:
        """``(i, j, l)`` with ``vertices[j] = l * vertices[i]`` and ``i < j``."""
        return self._edges

    def marking(self, i: int, j: int) -> Edge | None:
        return adjacency(self.vertices[i], self.vertices[j], self.q)

    def is_connected(self) -> bool:
        return len(connected_components(self)) == 1

    def to_json(self) -> dict:
        return {"m": self.m, "q": self.q, "vertices": [v.to_json() for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "MarkedGraph":
        m = int(data["m"])
        q = int(data["q"])
        verts = []
        for v in data["vertices"]:
            a = tuple(int(x) for x in v["a"])
            if len(a) != m:
                raise ValueError("vertex length does not match m")
            verts.append(GElem(a, int(v["sigma"])))
        return complete_graph(verts, q, m)

    def key(self) -> tuple:
        return tuple((v.a, v.sigma) for v in self.vertices)


def complete_graph(vertices: Iterable[GElem], q: int, m: int | None = None) -> MarkedGraph:
    vs = list(vertices)
    if m is None:
        if not vs:
            raise ValueError("m required for an empty vertex set")
        m = len(vs[0].a)
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertices")
    return MarkedGraph(tuple(vs), q, m)


def connected_components(g: MarkedGraph) -> list[MarkedGraph]:
    uf = UnionFind(len(g.vertices))
    for i, j, _ in g.edges:
        uf.union(i, j)
    return [complete_graph([g.vertices[i] for i in grp], g.q, g.m) for grp in uf.groups()]


def translate(vertices: Sequence[GElem], g: GElem) -> list[GElem]:
    return [g_mul(v, g) for v in vertices]


def canonicalize(g: MarkedGraph) -> MarkedGraph:
    """Orbit representative under right translations and coordinate permutations.

    Every right translate containing the identity is ``V * v^-1`` for some
    vertex ``v``, which also covers the sign change ``tau``.  For each such
    translate and each ordering of its non-root vertices, sorting the
    coordinate columns removes the S_m freedom; the lexicographically
    smallest resulting matrix wins.
    """
    if not g.is_connected():
        raise ValueError("canonicalize requires a connected graph")
    m = g.m
    best = None
    for root in g.vertices:
        shifted = translate(g.vertices, g_inv(root))
        ident = GElem.identity(m)
        others = [v for v in shifted if v != ident]
        for order in itertools.permutations(others):
            rows = (ident,) + order
            cols = sorted(
                (tuple(v.a[c] for v in rows) for c in range(m)),
                key=lambda col: (not any(col), col),
            )
            cand = tuple(
                (tuple(col[r] for col in cols), rows[r].sigma) for r in range(len(rows))
            )
            if best is None or cand < best:
                best = cand
    return complete_graph([GElem(a, s) for a, s in best], g.q, m)
