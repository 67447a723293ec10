"""Characteristic polynomials ``det(tI - C)`` of block matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .group import Edge, GElem, MarkedGraph, UnionFind, complete_graph
from .multipoly import MPoly, TPoly, det_cofactor, mp_specialize
from .nfmatrix import PolyMatrix, build_matrix, edge_coeff, linear_form, poly_A

__all__ = [
    "berkowitz",
    "charpoly",
    "charpoly_cofactor",
    "charpoly_one_edge",
    "graph_charpoly",
    "DeletionReport",
    "verify_deletion_factorization",
]


def berkowitz(rows: Sequence[Sequence[MPoly]], nvars: int) -> TPoly:
    """Division-free characteristic polynomial (Berkowitz).

    Grows the leading principal submatrix one row at a time; each step
    multiplies the coefficient vector by a Toeplitz matrix whose first
    column is ``1, -a, -R C, -R A C, ..., -R A^(r-1) C``.
    """
    n = len(rows)
    one = MPoly.const(1, nvars)
    zero = MPoly.zero(nvars)
    p = [one]  # highest degree first
    for r in range(n):
        a = rows[r][r]
        R = [rows[r][j] for j in range(r)]
        v = [rows[i][r] for i in range(r)]
        col = [one, -a]
        for k in range(r):
            col.append(-_dot(R, v, zero))
            if k < r - 1:
                v = [_dot(rows[i][:r], v, zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                cj, pj = col[i - j], p[j]
                if cj and pj:
                    s = s + cj * pj
            new.append(s)
        p = new
    return TPoly(list(reversed(p)), nvars)


def _dot(xs, ys, zero):
    acc = zero
    for x, y in zip(xs, ys):
        if x and y:
            acc = acc + x * y
    return acc


def charpoly(M: PolyMatrix | Sequence[Sequence[MPoly]], nvars: int | None = None,
             require_integer_exponents: bool | None = None) -> TPoly:
    """``det(tI - M)``, monic of degree ``dim``.

    For a :class:`PolyMatrix` built from a graph the result must have integer
    exponents; that is checked unless disabled.
    """
    if isinstance(M, PolyMatrix):
        rows = M.entries
        if require_integer_exponents is None:
            require_integer_exponents = True
    else:
        rows = M
    if nvars is None:
        if not rows:
            raise ValueError("nvars required for an empty matrix")
        nvars = rows[0][0].nvars
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix is not square")
    chi = berkowitz(rows, nvars)
    if require_integer_exponents and not chi.has_integer_exponents():
        raise ArithmeticError("characteristic polynomial has half-integer exponents")
    return chi


def charpoly_cofactor(M: PolyMatrix | Sequence[Sequence[MPoly]], nvars: int | None = None) -> TPoly:
    """Reference route: cofactor expansion of ``tI - M`` over Z[x][t]."""
    rows = M.entries if isinstance(M, PolyMatrix) else M
    if nvars is None:
        nvars = rows[0][0].nvars
    n = len(rows)
    t = TPoly.t(nvars)
    tm = [
        [(t if i == j else TPoly([], nvars)) - TPoly.const(rows[i][j], nvars) for j in range(n)]
        for i in range(n)
    ]
    return det_cofactor(tm, TPoly([], nvars))


def graph_charpoly(g: MarkedGraph) -> TPoly:
    return charpoly(build_matrix(g))


def one_edge_lbar(ell: Edge, q: int, m: int) -> MPoly:
    lf = linear_form(ell.n, q, m)
    if ell.sigma == 1:
        return lf
    return -lf + poly_A(q, m) * (2 * (q + 1))


def charpoly_one_edge(ell: Edge, q: int, m: int) -> TPoly:
    """Closed form ``t^2 - lbar t - sigma c^2`` for the graph ``{0, l}``."""
    c = edge_coeff(ell, q, m)
    lbar = one_edge_lbar(ell, q, m)
    free = c * c * (-ell.sigma)
    return TPoly([free, -lbar, MPoly.const(1, m)], m)


@dataclass
class DeletionReport:
    variable: int
    lhs: TPoly
    rhs: TPoly
    factors: list[TPoly]
    components: list[tuple[GElem, ...]]
    ok: bool = field(default=False)

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "ok": self.ok,
            "lhs": self.lhs.render(),
            "rhs": self.rhs.render(),
            "components": [[v.to_json() for v in comp] for comp in self.components],
        }


def verify_deletion_factorization(g: MarkedGraph, i: int) -> DeletionReport:
    """Replay: ``chi_g|_{x_i=0}`` equals the product over components left
    after deleting every edge whose marking involves index ``i``.
    """
    if not g.is_connected():
        raise ValueError("graph must be connected")
    m = g.m
    zero_i = {i: 0}
    M = build_matrix(g)
    lhs = charpoly(M).specialize(zero_i)

    uf = UnionFind(len(g.vertices))
    for a, b, ell in g.edges:
        if ell.n[i - 1] == 0:
            uf.union(a, b)
    spec = [[mp_specialize(e, zero_i) for e in row] for row in M.entries]
    factors = []
    comps = []
    kept = True
    for grp in uf.groups():
        members = set(grp)
        for a in grp:
            for b in range(len(g.vertices)):
                if b not in members and not spec[a][b].is_zero():
                    kept = False
        comp = complete_graph([g.vertices[a] for a in grp], g.q, m)
        factors.append(graph_charpoly(comp).specialize(zero_i))
        comps.append(comp.vertices)
    rhs = TPoly([MPoly.const(1, m)], m)
    for f in factors:
        rhs = rhs * f
    return DeletionReport(i, lhs, rhs, factors, comps, kept and lhs == rhs)

