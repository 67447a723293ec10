"""Irreducibility certificates, separation checks and the batch driver.

Irreducibility is meant in Z[x][t] for polynomials monic in ``t``.  By
Gauss's lemma this is the same as irreducibility over Q[x][t].

Certificates:

* degree 1: trivially irreducible;
* degree 2: ``t^2 + b t + c`` factors iff ``b^2 - 4c`` is a square in Z[x].
  A point where the discriminant evaluates to a non-square integer settles
  irreducibility; otherwise the symbolic square root decides;
* degree >= 3: a monic factorization survives every integer specialization,
  so one irreducible univariate image with full degree proves
  irreducibility.  If every image in the budget factors the verdict is
  ``Unknown``.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import sympy

from .charpoly import graph_charpoly
from .group import GElem, MarkedGraph, canonicalize, complete_graph, enumerate_edges, g_mul
from .multipoly import MPoly, TPoly, mp_divexact, mp_evaluate, mp_sqrt, tp_discriminant, tp_resultant

log = logging.getLogger(__name__)

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
UNKNOWN = "Unknown"

DEFAULT_BUDGET = 8

__all__ = [
    "IRREDUCIBLE",
    "REDUCIBLE",
    "UNKNOWN",
    "Certificate",
    "SeparationReport",
    "specialization_points",
    "irreducible",
    "separated",
    "opposite",
    "enumerate_graphs",
    "run_suite",
]


def _primes(count: int) -> list[int]:
    out = []
    n = 2
    while len(out) < count:
        if all(n % p for p in out if p * p <= n):
            out.append(n)
        n += 1
    return out


def specialization_points(m: int, budget: int, seed: int | None = None) -> list[tuple[int, ...]]:
    """Deterministic grid ``x_i = p_i^k`` for ``k = 1..budget``, ``p_i`` the i-th prime.

    With ``seed`` the points are drawn uniformly from ``[2, 10^4]`` instead.
    """
    if seed is not None:
        rng = random.Random(seed)
        return [tuple(rng.randint(2, 10**4) for _ in range(m)) for _ in range(budget)]
    ps = _primes(m)
    return [tuple(p**k for p in ps) for k in range(1, budget + 1)]


@dataclass
class Certificate:
    verdict: str
    evidence: dict = field(default_factory=dict)
    factors: list[TPoly] | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "evidence": self.evidence}
        if self.factors is not None:
            out["factors"] = [f.render() for f in self.factors]
        return out


def _is_square(v: int) -> bool:
    return v >= 0 and math.isqrt(v) ** 2 == v


def irreducible(P: TPoly, budget: int = DEFAULT_BUDGET, seed: int | None = None) -> Certificate:
    if P.is_zero() or P.degree < 1:
        raise ValueError("need a polynomial of degree >= 1 in t")
    if not P.is_monic():
        raise ValueError("polynomial is not monic in t")
    if P.degree == 1:
        return Certificate(IRREDUCIBLE, {"method": "degree-1"})
    if not P.has_integer_exponents():
        raise ValueError("coefficients must have integer exponents")
    points = specialization_points(P.nvars, budget, seed)
    if P.degree == 2:
        return _quadratic(P, points)
    return _by_specialization(P, points)


def _quadratic(P: TPoly, points) -> Certificate:
    b, c = P.coeff(1), P.coeff(0)
    for pt in points:
        vb = mp_evaluate(b, pt)
        vc = mp_evaluate(c, pt)
        disc = vb * vb - 4 * vc
        if not _is_square(disc):
            return Certificate(
                IRREDUCIBLE,
                {"method": "discriminant-nonsquare-at-point", "point": list(pt), "value": str(disc)},
            )
    disc = b * b - c * 4
    s = mp_sqrt(disc)
    if s is None:
        return Certificate(
            IRREDUCIBLE, {"method": "discriminant-not-a-square", "discriminant": disc.render()}
        )
    two = MPoly.const(2, P.nvars)
    r1 = mp_divexact(-b + s, two)
    r2 = mp_divexact(-b - s, two)
    one = MPoly.const(1, P.nvars)
    f1 = TPoly([-r1, one], P.nvars)
    f2 = TPoly([-r2, one], P.nvars)
    if f1 * f2 != P:
        raise ArithmeticError("square-root factorization failed to re-multiply")
    return Certificate(
        REDUCIBLE,
        {"method": "discriminant-square", "sqrt": s.render(), "verified": True},
        [f1, f2],
    )


_X = sympy.Symbol("t")


def _univariate_irreducible(values: Sequence[int]) -> tuple[bool, list[int]]:
    poly = sympy.Poly(list(reversed(values)), _X, domain=sympy.ZZ)
    _, facs = poly.factor_list()
    degrees = sorted(f.degree() for f, mult in facs for _ in range(mult))
    return degrees == [poly.degree()], degrees


def _by_specialization(P: TPoly, points) -> Certificate:
    tried = []
    for pt in points:
        vals = P.evaluate(pt)
        ok, degrees = _univariate_irreducible(vals)
        if ok:
            return Certificate(
                IRREDUCIBLE,
                {"method": "irreducible-specialization", "point": list(pt), "image": [str(v) for v in vals]},
            )
        tried.append({"point": list(pt), "factor_degrees": degrees})
    return Certificate(UNKNOWN, {"method": "specialization-budget-exhausted", "tried": tried})


# -- separation ---------------------------------------------------------

@dataclass
class SeparationReport:
    distinct: bool
    no_common_root: bool
    no_opposite_root: bool
    distinct_roots_a: bool
    distinct_roots_b: bool
    evidence: dict = field(default_factory=dict)

    @property
    def separated(self) -> bool:
        return (
            self.distinct
            and self.no_common_root
            and self.no_opposite_root
            and self.distinct_roots_a
            and self.distinct_roots_b
        )

    def flags(self) -> dict:
        return {
            "distinct": self.distinct,
            "no_common_root": self.no_common_root,
            "no_opposite_root": self.no_opposite_root,
            "distinct_roots_a": self.distinct_roots_a,
            "distinct_roots_b": self.distinct_roots_b,
        }


def opposite(P: TPoly) -> TPoly:
    """``(-1)^deg P(-t)``, monic when ``P`` is."""
    Q = P.negate_t()
    return -Q if P.degree % 2 else Q


def _const_tpoly(vals: Sequence[int]) -> TPoly:
    return TPoly([MPoly.const(v, 0) for v in vals], 0)


class _Evaluated:
    """A polynomial in t together with its integer images at fixed points."""

    def __init__(self, P: TPoly, points):
        self.P = P
        self.images = [_const_tpoly(P.evaluate(pt)) for pt in points]


def _nonzero(fn_int, fn_sym, images_a, images_b, points, symbolic: bool, label: str, evidence: dict) -> bool:
    if not symbolic:
        for pt, ia, ib in zip(points, images_a, images_b):
            if not fn_int(ia, ib).is_zero():
                evidence[label] = {"point": list(pt)}
                return True
    value = fn_sym()
    evidence[label] = {"symbolic": value.render()}
    return not value.is_zero()


def separated(chi_a: TPoly, chi_b: TPoly, symbolic: bool = False, points: int = 4,
              seed: int | None = None, _cache: tuple | None = None) -> SeparationReport:
    """Equality, common-root and opposite-root checks plus both discriminants.

    Nonvanishing of a resultant is certified by a nonzero value at an
    integer point (all inputs are monic, so specialization commutes with the
    resultant); only when every point gives zero is the symbolic resultant
    computed.  ``symbolic=True`` always computes it.
    """
    if not (chi_a.is_monic() and chi_b.is_monic()):
        raise ValueError("separated expects monic polynomials")
    pts = specialization_points(chi_a.nvars, points, seed)
    if _cache is not None:
        ea, eb = _cache
    else:
        ea, eb = _Evaluated(chi_a, pts), _Evaluated(chi_b, pts)
    ev: dict = {}
    distinct = chi_a != chi_b
    if not distinct:
        ev["equal"] = True
    common = _nonzero(
        lambda a, b: tp_resultant(a, b), lambda: tp_resultant(chi_a, chi_b),
        ea.images, eb.images, pts, symbolic, "resultant", ev,
    )
    opp = _nonzero(
        lambda a, b: tp_resultant(a, opposite(b)), lambda: tp_resultant(chi_a, opposite(chi_b)),
        ea.images, eb.images, pts, symbolic, "opposite_resultant", ev,
    )
    da = _disc_nonzero(chi_a, ea.images, pts, symbolic, "discriminant_a", ev)
    db = _disc_nonzero(chi_b, eb.images, pts, symbolic, "discriminant_b", ev)
    return SeparationReport(distinct, common, opp, da, db, ev)


def _disc_nonzero(P: TPoly, images, pts, symbolic: bool, label: str, ev: dict) -> bool:
    if P.degree == 1:
        ev[label] = {"degree": 1}
        return True
    return _nonzero(
        lambda a, _b: tp_discriminant(a), lambda: tp_discriminant(P),
        images, images, pts, symbolic, label, ev,
    )


# -- batch driver -------------------------------------------------------

def left_neighbors(v: GElem, q: int, m: int):
    for ell in enumerate_edges(q, m):
        yield g_mul(ell.as_gelem(), v)


def enumerate_graphs(q: int, m: int, max_dimension: int, max_graphs: int | None = None):
    """Canonical connected complete marked graphs with at most
    ``max_dimension + 1`` vertices, grown one adjacent vertex at a time.

    Returns ``(graphs, complete)``; ``complete`` is False when ``max_graphs``
    cut the enumeration short.
    """
    if max_dimension < 0:
        raise ValueError("max_dimension must be >= 0")
    root = complete_graph([GElem.identity(m)], q, m)
    found = {root.key(): root}
    frontier = [root]
    for _ in range(max_dimension):
        nxt = {}
        for g in frontier:
            verts = set(g.vertices)
            for v in g.vertices:
                for w in left_neighbors(v, q, m):
                    if w in verts:
                        continue
                    c = canonicalize(complete_graph(list(verts) + [w], q, m))
                    k = c.key()
                    if k not in found and k not in nxt:
                        nxt[k] = c
                        if max_graphs is not None and len(found) + len(nxt) > max_graphs:
                            found.update(nxt)
                            return _ordered(found), False
        found.update(nxt)
        frontier = list(nxt.values())
    return _ordered(found), True


def _ordered(found: dict) -> list[MarkedGraph]:
    return [found[k] for k in sorted(found, key=lambda k: (len(k), k))]


def _certify_one(args):
    g, budget, seed = args
    chi = graph_charpoly(g)
    return chi, irreducible(chi, budget, seed)


def run_suite(q: int, m: int, max_dimension: int, budget: int = DEFAULT_BUDGET, jobs: int = 1,
              max_graphs: int | None = None, pairs: bool = True, symbolic: bool = False,
              seed: int | None = None, extra: Sequence[tuple[str, TPoly]] = ()) -> dict:
    """Enumerate, build characteristic polynomials, certify, check all pairs.

    ``extra`` injects additional labelled polynomials (negative controls).
    """
    graphs, complete = enumerate_graphs(q, m, max_dimension, max_graphs)
    work = [(g, budget, seed) for g in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_certify_one, work, chunksize=8))
    else:
        results = [_certify_one(w) for w in work]
    entries = []
    chis = []
    for g, (chi, cert) in zip(graphs, results):
        entries.append({
            "canonical": g.to_json(),
            "dimension": g.dimension,
            "chi": chi.render(),
            "verdict": cert.verdict,
            "evidence": cert.evidence,
        })
        chis.append(chi)
    for label, chi in extra:
        cert = irreducible(chi, budget, seed)
        entry = {"canonical": None, "label": label, "dimension": chi.degree - 1,
                 "chi": chi.render(), "verdict": cert.verdict, "evidence": cert.evidence}
        if cert.factors:
            entry["factors"] = [f.render() for f in cert.factors]
        entries.append(entry)
        chis.append(chi)

    pair_list = []
    if pairs:
        pts = specialization_points(m, 4, seed)
        evals = [_Evaluated(c, pts) for c in chis]
        for i, j in itertools.combinations(range(len(chis)), 2):
            rep = separated(chis[i], chis[j], symbolic=symbolic, seed=seed, _cache=(evals[i], evals[j]))
            pair_list.append({"i": i, "j": j, "separated": rep.separated, "flags": rep.flags()})

    verdicts = [e["verdict"] for e in entries]
    summary = {
        "graphs": len(entries),
        "irreducible": verdicts.count(IRREDUCIBLE),
        "reducible": verdicts.count(REDUCIBLE),
        "unknown": verdicts.count(UNKNOWN),
        "pairs": len(pair_list),
        "non_separated_pairs": sum(1 for p in pair_list if not p["separated"]),
    }
    return {
        "schema": "melnikov/report/1",
        "params": {"q": q, "m": m, "max_dimension": max_dimension, "budget": budget,
                   "seed": seed, "pairs_checked": pairs, "symbolic": symbolic},
        "graphs": entries,
        "pairs": pair_list,
        "summary": summary,
        "unknown_warning": summary["unknown"] > 0,
        "incomplete": not complete,
    }
