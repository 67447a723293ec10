"""Exact normalized block matrices of complete colored marked graphs.

All entries are the raw normal-form entries divided by ``q + 1``; use
:func:`raw_matrix` to recover the unnormalized matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np

from .group import BLACK, Edge, GElem, MarkedGraph, edge_set
from .multipoly import MPoly, mp_divexact, mp_partial

__all__ = [
    "PolyMatrix",
    "multinomial",
    "compositions",
    "poly_A",
    "partials_A",
    "edge_coeff",
    "linear_form",
    "diag_entry",
    "build_matrix",
    "raw_matrix",
]


def multinomial(r: int, k: Sequence[int]) -> int:
    """``r! / prod(k_i!)``; zero if any part is negative or the parts do not sum to ``r``."""
    if any(x < 0 for x in k) or sum(k) != r:
        return 0
    out = factorial(r)
    for x in k:
        out //= factorial(x)
    return out


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def poly_A(r: int, m: int) -> MPoly:
    """``sum_{|k|=r} multinomial(r; k)^2 x^k``; ``r = 0`` gives 1."""
    if r < 0 or m < 1:
        raise ValueError("need r >= 0 and m >= 1")
    return MPoly.from_terms(
        m, ((tuple(2 * x for x in k), multinomial(r, k) ** 2) for k in compositions(r, m))
    )


@lru_cache(maxsize=None)
def partials_A(q: int, m: int) -> tuple[MPoly, ...]:
    """``d/dx_i A_{q+1}`` for ``i = 1..m``."""
    A = poly_A(q + 1, m)
    return tuple(mp_partial(A, i) for i in range(1, m + 1))


def _check_edge(ell: Edge, q: int, m: int) -> None:
    if len(ell.n) != m:
        raise ValueError(f"edge {ell.n} does not live in Z^{m}")
    if ell.n not in edge_set(q, m):
        raise ValueError(f"{ell.n} is not an edge for q={q}")


@lru_cache(maxsize=65536)
def edge_coeff(ell: Edge, q: int, m: int) -> MPoly:
    """The normalized marking polynomial ``c_q(l)``.

    Carries the prefactor ``x^((l+ + l-)/2)``, hence half-integer exponents.
    """
    _check_edge(ell, q, m)
    plus, minus = ell.plus, ell.minus
    base = [p + n for p, n in zip(plus, minus)]
    free = (q if ell.color == BLACK else q - 1) - sum(plus)
    terms = []
    for alpha in compositions(free, m):
        pa = [p + a for p, a in zip(plus, alpha)]
        na = [n + a for n, a in zip(minus, alpha)]
        if ell.color == BLACK:
            c = multinomial(q, pa) * multinomial(q, na)
        else:
            c = multinomial(q + 1, na) * multinomial(q - 1, pa)
        if c:
            terms.append(([b + 2 * a for b, a in zip(base, alpha)], c))
    poly = MPoly.from_terms(m, terms)
    return poly * (q + 1 if ell.color == BLACK else q)


def linear_form(a: Sequence[int], q: int, m: int) -> MPoly:
    """``a(x) = (1/(q+1)) sum_i n_i dA_{q+1}/dx_i``.

    The division is exact for every integer vector; an
    ``ArithmeticError`` here means a bug, not bad input.
    """
    if len(a) != m:
        raise ValueError(f"vector length {len(a)} != m={m}")
    return _linear_form(tuple(a), q, m)


@lru_cache(maxsize=None)
def _scaled_partials(q: int, m: int) -> tuple[MPoly, ...]:
    # each dA_{q+1}/dx_i is already divisible by q+1
    d = MPoly.const(q + 1, m)
    return tuple(mp_divexact(p, d) for p in partials_A(q, m))


@lru_cache(maxsize=None)
def _partials_table(q: int, m: int):
    """Scaled partials as a dense ``m x N`` int64 table over degree-q monomials."""
    parts = _scaled_partials(q, m)
    keys = sorted({k for p in parts for k in p._terms})
    index = {k: j for j, k in enumerate(keys)}
    table = np.zeros((m, len(keys)), dtype=np.int64)
    for i, p in enumerate(parts):
        for k, c in p._terms.items():
            table[i, index[k]] = c
    bound = max(p.max_exponent() for p in parts)
    return np.array(keys, dtype=object), table, int(np.abs(table).max(initial=0)), bound


@lru_cache(maxsize=4096)
def _linear_form(a: tuple[int, ...], q: int, m: int) -> MPoly:
    keys, table, cmax, bound = _partials_table(q, m)
    if cmax * sum(abs(x) for x in a) < 2**62:
        vals = np.asarray(a, dtype=np.int64) @ table
        nz = np.flatnonzero(vals)
        return MPoly._new(m, dict(zip(keys[nz].tolist(), vals[nz].tolist())), bound)
    acc = MPoly.zero(m)
    for n, d in zip(a, _scaled_partials(q, m)):
        if n:
            acc = acc + d * n
    return acc


def diag_entry(v: GElem, q: int, m: int) -> MPoly:
    if v.sigma == 1:
        return linear_form(v.a, q, m)
    return -linear_form(v.a, q, m) + poly_A(q, m) * (2 * (q + 1))


@dataclass(frozen=True)
class PolyMatrix:
    dim: int
    entries: tuple[tuple[MPoly, ...], ...]
    vertex_order: tuple[GElem, ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[MPoly]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertex_order": [v.to_json() for v in self.vertex_order],
            "entries": [[e.render() for e in row] for row in self.entries],
            "entries_json": [[e.to_json() for e in row] for row in self.entries],
        }


def build_matrix(g: MarkedGraph) -> PolyMatrix:
    """Normalized matrix: diagonal from :func:`diag_entry`, ``(x, y)`` entry ``sigma_y c(l)``."""
    if not g.is_connected():
        raise ValueError("build_matrix requires a connected graph; split components first")
    q, m = g.q, g.m
    vs = g.vertices
    n = len(vs)
    zero = MPoly.zero(m)
    rows = [[zero] * n for _ in range(n)]
    for i, v in enumerate(vs):
        rows[i][i] = diag_entry(v, q, m)
    for i, j, _ in g.edges:
        for x, y in ((i, j), (j, i)):
            ell = g.marking(x, y)
            rows[x][y] = edge_coeff(ell, q, m) * vs[y].sigma
    return PolyMatrix(n, tuple(tuple(r) for r in rows), vs)


def raw_matrix(M: PolyMatrix, q: int) -> PolyMatrix:
    """The unnormalized matrix ``(q+1) * M``."""
    return PolyMatrix(
        M.dim, tuple(tuple(e * (q + 1) for e in row) for row in M.entries), M.vertex_order
    )
