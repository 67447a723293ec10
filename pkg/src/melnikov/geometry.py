"""Tangential sites, pair sets and the geometric graph on the normal sites.

An edge ``l`` joins normal sites ``h, k`` when momentum and energy balance:

* black (mass 0):  ``pi(l) + k - h = 0`` and ``sum l_j |v_j|^2 + |k|^2 - |h|^2 = 0``;
* red (mass -2):   ``pi(l) + k + h = 0`` and ``sum l_j |v_j|^2 + |k|^2 + |h|^2 = 0``.

Black solutions form an affine hyperplane and are cut off at the box
``[-R, R]^n``.  A vertex whose partner falls outside the box is marked
truncated and its component is flagged: it may continue beyond the box.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

from .group import BLACK, Edge, GElem, MarkedGraph, UnionFind, complete_graph, enumerate_edges, g_mul

Point = tuple[int, ...]

__all__ = [
    "Sites",
    "PairSet",
    "GeoEdge",
    "GeoGraph",
    "GeoComponent",
    "GenericityReport",
    "LiftError",
    "momentum",
    "act",
    "pair_set",
    "geo_graph",
    "geo_components",
    "genericity_check",
    "search_generic_sites",
    "lift_component",
    "to_dot",
]


@dataclass(frozen=True)
class Sites:
    v: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple(tuple(int(c) for c in p) for p in self.v)
        object.__setattr__(self, "v", vs)
        if len(vs) < 2:
            raise ValueError("need at least two sites")
        if len({len(p) for p in vs}) != 1:
            raise ValueError("sites have different dimensions")
        if len(set(vs)) != len(vs):
            raise ValueError("sites must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.v[0])

    @property
    def m(self) -> int:
        return len(self.v)

    def norms(self) -> tuple[int, ...]:
        return tuple(_sq(p) for p in self.v)

    def radius(self) -> int:
        return max(max(abs(c) for c in p) for p in self.v)

    def to_json(self) -> dict:
        return {"n": self.n, "v": [list(p) for p in self.v]}

    @classmethod
    def from_json(cls, data: dict) -> "Sites":
        s = cls(tuple(tuple(p) for p in data["v"]))
        if "n" in data and int(data["n"]) != s.n:
            raise ValueError("declared n does not match the site vectors")
        return s


def _sq(p: Sequence[int]) -> int:
    return sum(c * c for c in p)


def _add(p, r):
    return tuple(a + b for a, b in zip(p, r))


def _sub(p, r):
    return tuple(a - b for a, b in zip(p, r))


def _neg(p):
    return tuple(-a for a in p)


def momentum(a: Sequence[int] | GElem, sites: Sites) -> Point:
    """``sum a_i v_i``; for a group element the sign part is ignored."""
    if isinstance(a, GElem):
        a = a.a
    if len(a) != sites.m:
        raise ValueError(f"vector length {len(a)} != number of sites {sites.m}")
    out = [0] * sites.n
    for ai, v in zip(a, sites.v):
        if ai:
            for c in range(sites.n):
                out[c] += ai * v[c]
    return tuple(out)


def act(x: GElem, k: Point, sites: Sites) -> Point:
    """``(a, sigma) . k = -pi(a) + sigma k``."""
    p = momentum(x, sites)
    return tuple(-pc + x.sigma * kc for pc, kc in zip(p, k))


def _energy(ell: Edge, sites: Sites) -> int:
    return sum(n * s for n, s in zip(ell.n, sites.norms()))


@dataclass
class PairSet:
    color: str
    pairs: list[tuple[Point, Point]]
    truncated: bool


def _box(n: int, R: int):
    return itertools.product(range(-R, R + 1), repeat=n)


def pair_set(ell: Edge, sites: Sites, R: int) -> PairSet:
    """Pairs of normal sites joined by ``ell``.

    Black: ordered ``(h, k)`` with ``k`` in the box; ``truncated`` is set when
    the hyperplane carries integer points beyond what a box can hold.
    Red: unordered ``{h, k}`` (as ``h <= k``) on a sphere, enumerated in full.
    """
    if len(ell.n) != sites.m:
        raise ValueError("edge length does not match the number of sites")
    if R < 1:
        raise ValueError("R must be >= 1")
    S = set(sites.v)
    E = _energy(ell, sites)
    p = momentum(ell.n, sites)
    n = sites.n
    pairs = []
    if ell.color == BLACK:
        # h = k + p, energy: 2 k.p + |p|^2 = E
        rhs = E - _sq(p)
        if not any(p):
            truncated = rhs == 0
            cands = _box(n, R) if rhs == 0 else ()
        elif n == 1:
            truncated = False
            cands = [(rhs // (2 * p[0]),)] if rhs % (2 * p[0]) == 0 else []
        else:
            g = reduce(math.gcd, (2 * c for c in p))
            truncated = rhs % g == 0
            cands = _box(n, R) if truncated else ()
        for k in cands:
            if 2 * sum(a * b for a, b in zip(k, p)) != rhs:
                continue
            h = _add(k, p)
            if h in S or k in S:
                continue
            pairs.append((h, k))
        return PairSet(BLACK, pairs, truncated)

    # red: h + k = s, |h|^2 + |k|^2 = -E; sphere centre s/2, (2r)^2 = -2E - |s|^2
    s = _neg(p)
    diam2 = -2 * E - _sq(s)
    if diam2 < 0:
        return PairSet("red", [], False)
    w = math.isqrt(diam2)
    ranges = [range(-((w - sc) // 2), (sc + w) // 2 + 1) for sc in s]
    for h in itertools.product(*ranges):
        k = _sub(s, h)
        if h > k or _sq(h) + _sq(k) != -E:
            continue
        if h in S or k in S:
            continue
        pairs.append((h, k))
    return PairSet("red", pairs, False)


@dataclass(frozen=True)
class GeoEdge:
    """``h``, ``k`` and the marking; black edges satisfy ``pi(l) + k - h = 0``."""

    h: Point
    k: Point
    ell: Edge

    def check(self, sites: Sites) -> bool:
        p = momentum(self.ell.n, sites)
        E = _energy(self.ell, sites)
        if self.ell.color == BLACK:
            return _add(p, self.k) == self.h and E + _sq(self.k) - _sq(self.h) == 0
        return _add(_add(p, self.k), self.h) == (0,) * sites.n and E + _sq(self.k) + _sq(self.h) == 0

    def to_json(self) -> dict:
        return {"h": list(self.h), "k": list(self.k), "marking": list(self.ell.n), "color": self.ell.color}


@dataclass
class GeoGraph:
    sites: Sites
    q: int
    R: int
    vertices: list[Point]
    edges: list[GeoEdge]
    truncated: set[Point] = field(default_factory=set)

    def to_json(self) -> dict:
        used = sorted({p for e in self.edges for p in (e.h, e.k)})
        return {
            "schema": "melnikov/geograph/1",
            "sites": self.sites.to_json(),
            "q": self.q,
            "R": self.R,
            "vertex_count": len(self.vertices),
            "nodes": [list(p) for p in used],
            "edges": [e.to_json() for e in self.edges],
            "truncated": [list(p) for p in sorted(self.truncated)],
        }


def geo_graph(sites: Sites, q: int, R: int) -> GeoGraph:
    """Normal sites in ``[-R, R]^n`` and every edge of ``X_q`` between them."""
    if R < sites.radius():
        raise ValueError(f"R={R} does not contain the sites (need R >= {sites.radius()})")
    S = set(sites.v)
    norms = sites.norms()
    verts = [p for p in _box(sites.n, R) if p not in S]
    inbox = set(verts)
    marks = []
    for ell in enumerate_edges(q, sites.m):
        marks.append((ell, momentum(ell.n, sites), sum(a * b for a, b in zip(ell.n, norms))))
    edges = set()
    truncated = set()
    for p in verts:
        sp = _sq(p)
        for ell, mom, E in marks:
            if ell.color == BLACK:
                k = _sub(p, mom)
                if E + _sq(k) - sp != 0:
                    continue
            else:
                k = _sub(_neg(mom), p)
                if E + _sq(k) + sp != 0:
                    continue
            if k in S:
                continue
            if k not in inbox:
                truncated.add(p)
                continue
            edges.add(_normalize(p, k, ell))
    return GeoGraph(sites, q, R, verts, sorted(edges, key=lambda e: (e.h, e.k, e.ell)), truncated)


def _normalize(h: Point, k: Point, ell: Edge) -> GeoEdge:
    if h <= k:
        return GeoEdge(h, k, ell)
    if ell.color == BLACK:
        return GeoEdge(k, h, Edge(tuple(-x for x in ell.n)))
    return GeoEdge(k, h, ell)


@dataclass
class GeoComponent:
    points: list[Point]
    edges: list[GeoEdge]
    flagged: bool

    @property
    def kind(self) -> str:
        pairs = {(e.h, e.k) for e in self.edges}
        if len(self.points) == 1 and not self.edges:
            return "vertex"
        if len(self.points) == 2 and len(self.edges) == 1 and len(pairs) == 1:
            return "single-edge"
        return "larger"

    def to_json(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "edges": [e.to_json() for e in self.edges],
            "kind": self.kind,
            "flagged": self.flagged,
        }


def geo_components(g: GeoGraph) -> list[GeoComponent]:
    index = {p: i for i, p in enumerate(g.vertices)}
    uf = UnionFind(len(g.vertices))
    for e in g.edges:
        uf.union(index[e.h], index[e.k])
    by_root: dict[int, list[GeoEdge]] = {}
    for e in g.edges:
        by_root.setdefault(uf.find(index[e.h]), []).append(e)
    out = []
    for grp in uf.groups():
        pts = sorted(g.vertices[i] for i in grp)
        es = by_root.get(uf.find(grp[0]), [])
        out.append(GeoComponent(pts, es, any(p in g.truncated for p in pts)))
    out.sort(key=lambda c: c.points[0])
    return out


@dataclass
class GenericityReport:
    passed: bool
    exploratory: bool
    counts: dict
    witnesses: list[GeoComponent]

    def to_json(self) -> dict:
        return {
            "schema": "melnikov/genericity/1",
            "pass": self.passed,
            "exploratory": self.exploratory,
            "counts": self.counts,
            "witnesses": [c.to_json() for c in self.witnesses],
        }


def genericity_check(sites: Sites, q: int, R: int, graph: GeoGraph | None = None) -> GenericityReport:
    """Pass iff no component is larger than a single edge.

    Flagged components that are still a vertex or a single edge inside the
    box are counted as ``boundary`` and not classified; flagged components
    that already exceed one edge fail.
    """
    g = graph if graph is not None else geo_graph(sites, q, R)
    counts = {"vertex": 0, "single-edge": 0, "larger": 0, "boundary": 0}
    witnesses = []
    for c in geo_components(g):
        kind = c.kind
        if kind == "larger":
            counts["larger"] += 1
            witnesses.append(c)
        elif c.flagged:
            counts["boundary"] += 1
        else:
            counts[kind] += 1
    return GenericityReport(counts["larger"] == 0, sites.n not in (1, 2), counts, witnesses)


def search_generic_sites(n: int, m: int, q: int, R: int, radius: int | None = None,
                         seed: int = 0, max_tries: int = 500):
    """Sample integer sites in ``[-radius, radius]^n`` until the check passes.

    Returns ``(sites, report, tries)``, or ``(None, None, max_tries)``.
    """
    radius = radius if radius is not None else max(1, R // 2)
    if radius > R:
        raise ValueError("sampling radius exceeds the box")
    if (2 * radius + 1) ** n < m:
        raise ValueError("sampling ball too small for m distinct sites")
    rng = random.Random(seed)
    for attempt in range(1, max_tries + 1):
        pts: list[Point] = []
        while len(pts) < m:
            p = tuple(rng.randint(-radius, radius) for _ in range(n))
            if p not in pts:
                pts.append(p)
        sites = Sites(tuple(pts))
        rep = genericity_check(sites, q, R)
        if rep.passed:
            return sites, rep, attempt
    return None, None, max_tries


class LiftError(ValueError):
    """A geometric component has no consistent lift to the Cayley graph."""


def _step(ell: Edge, forward: bool) -> GElem:
    if ell.color == BLACK:
        return GElem(ell.n if forward else tuple(-x for x in ell.n), 1)
    return GElem(ell.n, -1)


def lift_component(c: GeoComponent, sites: Sites, q: int, root: Point | None = None) -> MarkedGraph:
    """Assign group elements to the points of a component.

    The root ``k0`` (default: the smallest point) becomes ``(0, +1)``; each point ``k`` gets the
    ``x`` with ``x . k0 = k``.  Black edges ``h -> k`` compose ``(l, +1)``,
    red ones ``(l, -1)``.  Returns the complete graph on the lifted vertices,
    which may carry Cayley edges that have no geometric counterpart.
    """
    if c.flagged:
        raise ValueError("component touches the box boundary and may be incomplete")
    m = sites.m
    S = set(sites.v)
    k0 = c.points[0] if root is None else tuple(root)
    if k0 not in c.points:
        raise ValueError(f"root {k0} is not a point of the component")
    assigned = {k0: GElem.identity(m)}
    adj: dict[Point, list[tuple[Point, GElem]]] = {p: [] for p in c.points}
    for e in c.edges:
        adj[e.h].append((e.k, _step(e.ell, True)))
        adj[e.k].append((e.h, _step(e.ell, False)))
    todo = deque([k0])
    while todo:
        p = todo.popleft()
        x = assigned[p]
        for r, step in adj[p]:
            y = g_mul(step, x)
            if r in assigned:
                if assigned[r] != y:
                    raise LiftError(f"cycle through {p} and {r} does not close")
                continue
            assigned[r] = y
            todo.append(r)
    if len(assigned) != len(c.points):
        raise LiftError("component is not connected")
    for p, x in assigned.items():
        if act(x, k0, sites) != p or p in S:
            raise LiftError(f"vertex {x} does not map to the normal site {p}")
    return complete_graph([assigned[p] for p in c.points], q, m)


def to_dot(g: GeoGraph, name: str = "geo") -> str:
    """Graphviz DOT of the non-isolated part of the graph."""
    lines = [f"graph {name} {{"]
    used = sorted({p for e in g.edges for p in (e.h, e.k)})
    for p in used:
        label = ",".join(map(str, p))
        extra = ", style=dashed" if p in g.truncated else ""
        lines.append(f'  "{label}" [label="({label})"{extra}];')
    for e in g.edges:
        a, b = ",".join(map(str, e.h)), ",".join(map(str, e.k))
        mark = ",".join(map(str, e.ell.n))
        lines.append(f'  "{a}" -- "{b}" [color={e.ell.color}, label="{mark}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
