"""Acceptance criteria, one test per criterion.

The terminal summary prints a PASS/FAIL line for each criterion
(see ``conftest.py``).
"""

import itertools
import random

import pytest
from helpers import random_connected

from melnikov.certify import IRREDUCIBLE, REDUCIBLE, irreducible, run_suite, separated
from melnikov.charpoly import (
    berkowitz,
    charpoly,
    charpoly_cofactor,
    charpoly_one_edge,
    verify_deletion_factorization,
)
from melnikov.geometry import genericity_check, geo_components, geo_graph, lift_component, search_generic_sites
from melnikov.group import Edge, GElem, canonicalize, complete_graph, enumerate_edges
from melnikov.multipoly import MPoly, TPoly, Var, mp_divexact, mp_specialize
from melnikov.nfmatrix import build_matrix, diag_entry, edge_coeff, linear_form, multinomial, partials_A

criterion = pytest.mark.criterion


def pure_power(i, q, m):
    exps = [0] * m
    exps[i] = 2 * q
    return exps


@pytest.fixture(scope="module")
def one_edge_chis():
    """chi of {0, l} through the generic matrix pipeline, for every l at m = 2q."""
    out = {}
    for q in (1, 2, 3, 4):
        m = 2 * q
        root = GElem.identity(m)
        out[q] = [(ell, charpoly(build_matrix(complete_graph([root, ell.as_gelem()], q, m))))
                  for ell in enumerate_edges(q, m)]
    return out


@criterion(1)
def test_c01_one_edge_closed_form(one_edge_chis):
    mismatches = [(q, ell.n) for q, rows in one_edge_chis.items() for ell, chi in rows
                  if chi != charpoly_one_edge(ell, q, 2 * q)]
    assert sum(len(r) for r in one_edge_chis.values()) == 3 + 100 + 2450 + 63882
    assert mismatches == []


@criterion(2)
def test_c02_one_edge_irreducible(one_edge_chis):
    bad = []
    for q, rows in one_edge_chis.items():
        for ell, chi in rows:
            cert = irreducible(chi)
            decisive = cert.evidence["method"] in ("discriminant-nonsquare-at-point", "discriminant-not-a-square")
            if cert.verdict != IRREDUCIBLE or not decisive:
                bad.append((q, ell.n, cert.verdict))
    assert bad == []


@criterion(3)
def test_c03_extra_case_coefficient():
    got = edge_coeff(Edge((-5, 1, 1, 1)), 4, 4)
    assert got == MPoly.monomial([5, 1, 1, 1], 4), f"got {got.render()}"


@criterion(4)
def test_c04_diagonal_pure_power_coefficients():
    rng = random.Random(4)
    checked = 0
    for _ in range(400):
        q = rng.randint(1, 4)
        m = rng.randint(2, 6)
        ell = rng.choice(enumerate_edges(q, m))
        d = diag_entry(ell.as_gelem(), q, m)
        for i in range(m):
            n = ell.n[i]
            want = -q * n if ell.color == "black" else 4 * (q + 1) + q * n
            assert d.coeff(pure_power(i, q, m)) == want, (q, ell.n, i + 1)
            checked += 1
    assert checked > 1000


@criterion(5)
def test_c05_deletion_factorization():
    rng = random.Random(5)
    graphs = 0
    for _ in range(120):
        q = rng.randint(1, 3)
        m = rng.randint(2, 4)
        g = random_connected(rng, q, m, rng.randint(1, 5))
        for i in range(1, m + 1):
            rep = verify_deletion_factorization(g, i)
            assert rep.ok, (g.to_json(), i)
        graphs += 1
    assert graphs >= 100


@criterion(6)
def test_c06_linear_form_integrality():
    rng = random.Random(6)
    for _ in range(500):
        q = rng.randint(1, 5)
        m = rng.randint(2, 6)
        a = tuple(rng.randint(-6, 6) for _ in range(m))
        total = MPoly.zero(m)
        for n, d in zip(a, partials_A(q, m)):
            total = total + d * n
        # the independent route divides the full sum; ArithmeticError would mean non-integral
        expect = mp_divexact(total, MPoly.const(q + 1, m))
        assert linear_form(a, q, m) == expect
        assert all(isinstance(c, int) for _, c in expect.terms())


@criterion(7)
def test_c07_equal_variable_vanishing():
    rng = random.Random(7)
    for _ in range(100):
        q = rng.randint(1, 4)
        m = rng.randint(2, 6)
        k = rng.randint(2, m)
        support = sorted(rng.sample(range(1, m + 1), k))
        n = [rng.choice([v for v in range(-5, 6) if v]) for _ in range(k - 1)]
        last = -sum(n)
        if last == 0:
            n[0] += 1
            last -= 1
        n.append(last)
        a = [0] * m
        for i, v in zip(support, n):
            a[i - 1] = v
        assert sum(a) == 0 and all(a[i - 1] for i in support)
        sub = {j: Var(support[0]) for j in support[1:]}
        assert mp_specialize(linear_form(a, q, m), sub).is_zero(), (q, a)


@criterion(8)
def test_c08_berkowitz_vs_cofactor():
    rng = random.Random(8)
    count = 0
    for _ in range(60):
        q = rng.randint(1, 3)
        m = rng.randint(2, 4)
        M = build_matrix(random_connected(rng, q, m, rng.randint(1, 5)))
        assert berkowitz(M.rows(), m) == charpoly_cofactor(M)
        count += 1
    for n in range(1, 6):
        for _ in range(6):
            rows = [[MPoly.from_terms(2, [([2 * rng.randint(0, 2), 2 * rng.randint(0, 2)], rng.randint(-4, 4))
                                          for _ in range(rng.randint(0, 3))]) for _ in range(n)] for _ in range(n)]
            assert berkowitz(rows, 2) == charpoly_cofactor(rows, 2)
            count += 1
    assert count == 90


@criterion(9)
def test_c09_edge_shape_laws():
    full = 0
    for q in (1, 2, 3, 4):
        for m in range(2, 9):
            for ell in enumerate_edges(q, m):
                p, n = sum(ell.plus), sum(ell.minus)
                if ell.color == "black":
                    assert p == n <= q, ell.n
                else:
                    assert p <= q - 1 and n <= q + 1, ell.n
                # the full-support law presumes m >= 2q, so k = m means m = 2q
                if len(ell.support) != m or m < 2 * q:
                    continue
                prefactor = [a + b for a, b in zip(ell.plus, ell.minus)]
                if ell.color == "black":
                    assert p == n == q
                    value = (q + 1) * multinomial(q, ell.plus) * multinomial(q, ell.minus)
                else:
                    assert p == q - 1 and n == q + 1
                    value = q * multinomial(q + 1, ell.minus) * multinomial(q - 1, ell.plus)
                assert edge_coeff(ell, q, m) == MPoly.monomial(prefactor, value), ell.n
                full += 1
    assert full == 3 + 10 + 35 + 126


@criterion(10)
def test_c10_generic_sites_lift_and_certify():
    sites, report, _ = search_generic_sites(2, 3, 1, 8, seed=0)
    assert sites is not None
    assert genericity_check(sites, 1, 8).passed and report.passed
    classes = {}
    for c in geo_components(geo_graph(sites, 1, 8)):
        if not c.flagged:
            G = canonicalize(lift_component(c, sites, 1))
            classes[G.key()] = G
    chis = [charpoly(build_matrix(G)) for G in classes.values()]
    assert len(chis) >= 2
    assert all(irreducible(chi).verdict == IRREDUCIBLE for chi in chis)
    for a, b in itertools.combinations(chis, 2):
        assert separated(a, b).separated


@criterion(11)
def test_c11_square_divisibility():
    for q in (1, 2, 3, 4):
        for m in range(2, 7):
            for ell in enumerate_edges(q, m):
                sq = edge_coeff(ell, q, m) ** 2
                for i in ell.support:
                    need = 2 * abs(ell.n[i - 1])
                    assert all(exps[i - 1] >= need for exps, _ in sq.terms()), (q, ell.n, i)


@criterion(12)
def test_c12_negative_controls():
    rng = random.Random(12)
    one = MPoly.const(1, 3)
    xs = [MPoly.var(i, 3) for i in (1, 2, 3)]

    def rand_poly():
        return sum((x * rng.randint(-5, 5) for x in xs), MPoly.const(rng.randint(-3, 3), 3)) + \
            xs[rng.randrange(3)] * xs[rng.randrange(3)] * rng.randint(-2, 2)

    for _ in range(20):
        f, g = rand_poly(), rand_poly()
        P = TPoly([-f, one], 3) * TPoly([-g, one], 3)
        cert = irreducible(P)
        assert cert.verdict == REDUCIBLE
        a, b = cert.factors
        assert a * b == P
        assert {a, b} == {TPoly([-f, one], 3), TPoly([-g, one], 3)}

    chi = charpoly_one_edge(Edge((1, -1, 0)), 1, 3)
    assert not separated(chi, chi).separated
    assert not separated(chi, chi, symbolic=True).separated
    # opposite-root control: chi(t) against (-1)^deg chi(-t)
    mirrored = TPoly([chi.coeff(0), -chi.coeff(1), chi.coeff(2)], 3)
    rep = separated(chi, mirrored)
    assert rep.distinct and not rep.no_opposite_root and not rep.separated

    y1 = MPoly.var(1, 2)
    planted = TPoly([-(y1 * y1), MPoly.zero(2), MPoly.const(1, 2)], 2)
    report = run_suite(1, 2, 1, extra=[("dup", charpoly_one_edge(Edge((1, -1)), 1, 2)), ("planted", planted)])
    assert report["summary"]["reducible"] == 1
    assert report["summary"]["non_separated_pairs"] >= 1
