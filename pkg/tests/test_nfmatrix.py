import random

import pytest

from melnikov.group import Edge, GElem, complete_graph, enumerate_edges
from melnikov.multipoly import MPoly, Var, mp_partial, mp_specialize
from melnikov.nfmatrix import (
    build_matrix,
    compositions,
    diag_entry,
    edge_coeff,
    linear_form,
    multinomial,
    partials_A,
    poly_A,
    raw_matrix,
)

x1, x2 = MPoly.var(1, 2), MPoly.var(2, 2)


def xi_power(i, q, m):
    exps = [0] * m
    exps[i] = 2 * q
    return exps


def test_multinomial():
    assert multinomial(4, (2, 1, 1)) == 12
    assert multinomial(3, (4, -1)) == 0
    assert multinomial(3, (1, 1)) == 0


def test_compositions_count():
    assert len(list(compositions(4, 3))) == 15


class TestPolyA:
    def test_linear(self):
        assert poly_A(1, 3) == sum((MPoly.var(i, 3) for i in (2, 3)), MPoly.var(1, 3))

    def test_r2_m2(self):
        assert poly_A(2, 2) == x1 * x1 + x1 * x2 * 4 + x2 * x2

    def test_r0(self):
        assert poly_A(0, 3) == MPoly.const(1, 3)

    @pytest.mark.parametrize("q,m", [(1, 2), (3, 4), (4, 5)])
    def test_pure_power_coefficient(self, q, m):
        for i in range(m):
            assert poly_A(q, m).coeff(xi_power(i, q, m)) == 1

    def test_brute_force_expansion(self):
        # A_r(x) = sum over words of length r: (#words with content k) * multinomial(r; k) x^k
        r, m = 3, 3
        acc = {}
        for i in range(m ** r):
            k = [0] * m
            for _ in range(r):
                k[i % m] += 1
                i //= m
            acc[tuple(k)] = acc.get(tuple(k), 0) + 1
        oracle = MPoly.from_terms(m, [([2 * v for v in k], c * c) for k, c in acc.items()])
        assert poly_A(r, m) == oracle


class TestEdgeCoeff:
    def test_q1_black(self):
        assert edge_coeff(Edge((1, -1)), 1, 2) == MPoly.monomial([1, 1], 2)

    def test_q1_red(self):
        # q * multinomial(2; 1,1) * multinomial(0; 0,0)
        assert edge_coeff(Edge((-1, -1)), 1, 2) == MPoly.monomial([1, 1], 2)

    def test_invalid(self):
        with pytest.raises(ValueError):
            edge_coeff(Edge((3, -3)), 1, 2)
        with pytest.raises(ValueError):
            edge_coeff(Edge((1, -1)), 1, 3)

    @pytest.mark.parametrize("q,m", [(1, 3), (2, 4), (3, 4)])
    def test_black_symmetric(self, q, m):
        for ell in enumerate_edges(q, m):
            if ell.color == "black":
                assert edge_coeff(ell, q, m) == edge_coeff(Edge(tuple(-c for c in ell.n)), q, m)

    @pytest.mark.parametrize("q", [1, 2, 3, 4])
    def test_full_support_single_monomial(self, q):
        m = 2 * q
        for ell in enumerate_edges(q, m):
            if len(ell.support) != m:
                continue
            c = edge_coeff(ell, q, m)
            prefactor = [p + n for p, n in zip(ell.plus, ell.minus)]
            if ell.color == "black":
                assert sum(ell.plus) == sum(ell.minus) == q
                value = (q + 1) * multinomial(q, ell.plus) * multinomial(q, ell.minus)
            else:
                assert sum(ell.plus) == q - 1 and sum(ell.minus) == q + 1
                value = q * multinomial(q + 1, ell.minus) * multinomial(q - 1, ell.plus)
            assert c == MPoly.monomial(prefactor, value)

    def test_extra_case_value(self):
        # the single surviving term: q * multinomial(5; 5) * multinomial(3; 1,1,1)
        c = edge_coeff(Edge((-5, 1, 1, 1)), 4, 4)
        assert c == MPoly.monomial([5, 1, 1, 1], 24)

    @pytest.mark.parametrize("q,m", [(2, 4), (3, 5)])
    def test_square_divisible(self, q, m):
        for ell in enumerate_edges(q, m):
            sq = edge_coeff(ell, q, m) ** 2
            for i in ell.support:
                need = 2 * abs(ell.n[i - 1])
                assert all(exps[i - 1] >= need for exps, _ in sq.terms())


class TestLinearForm:
    def test_q1(self):
        assert linear_form((1, -1), 1, 2) == x2 - x1

    def test_zero(self):
        assert linear_form((0, 0, 0), 2, 3).is_zero()

    def test_definition(self):
        rng = random.Random(11)
        for _ in range(20):
            q, m = rng.randint(1, 3), rng.randint(2, 4)
            a = tuple(rng.randint(-4, 4) for _ in range(m))
            total = MPoly.zero(m)
            for n, d in zip(a, partials_A(q, m)):
                total = total + d * n
            assert linear_form(a, q, m) * (q + 1) == total

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            linear_form((1, -1), 1, 3)

    @pytest.mark.parametrize("q,m", [(1, 3), (2, 4), (4, 5)])
    def test_black_pure_power_coefficient(self, q, m):
        for ell in enumerate_edges(q, m):
            if ell.color != "black":
                continue
            lf = linear_form(ell.n, q, m)
            for i in ell.support:
                assert lf.coeff(xi_power(i - 1, q, m)) == -q * ell.n[i - 1]

    def test_partials_agree_on_diagonal(self):
        for q, m in [(1, 3), (2, 3), (3, 4)]:
            d = partials_A(q, m)
            for i in range(1, m + 1):
                for j in range(i + 1, m + 1):
                    sub = {j: Var(i)}
                    assert mp_specialize(d[i - 1], sub) == mp_specialize(d[j - 1], sub)


class TestDiagonal:
    def test_root(self):
        assert diag_entry(GElem.identity(3), 2, 3).is_zero()

    def test_black_vertex(self):
        assert diag_entry(GElem((1, -1), 1), 1, 2) == x2 - x1

    @pytest.mark.parametrize("q,m", [(1, 3), (2, 4), (3, 5)])
    def test_red_pure_power_coefficient(self, q, m):
        for ell in enumerate_edges(q, m):
            if ell.color != "red":
                continue
            d = diag_entry(GElem(ell.n, -1), q, m)
            for i in range(1, m + 1):
                assert d.coeff(xi_power(i - 1, q, m)) == 4 * (q + 1) + q * ell.n[i - 1]


class TestBuildMatrix:
    def test_black_one_edge(self):
        g = complete_graph([GElem((0, 0), 1), GElem((1, -1), 1)], 1)
        M = build_matrix(g)
        c = MPoly.monomial([1, 1], 2)
        i0 = M.vertex_order.index(GElem((0, 0), 1))
        i1 = 1 - i0
        assert M[i0, i0].is_zero() and M[i1, i1] == x2 - x1
        assert M[i0, i1] == c and M[i1, i0] == c

    def test_red_one_edge(self):
        g = complete_graph([GElem((0, 0), 1), GElem((-1, -1), -1)], 1)
        M = build_matrix(g)
        i0 = M.vertex_order.index(GElem((0, 0), 1))
        i1 = 1 - i0
        c = edge_coeff(Edge((-1, -1)), 1, 2)
        assert M[i0, i1] == -c and M[i1, i0] == c
        assert M[i1, i1] == -linear_form((-1, -1), 1, 2) + poly_A(1, 2) * 4

    def test_single_vertex(self):
        M = build_matrix(complete_graph([GElem.identity(2)], 1))
        assert M.dim == 1 and M[0, 0].is_zero()

    def test_sparsity_and_raw(self):
        g = complete_graph([GElem((0, 0, 0), 1), GElem((1, -1, 0), 1), GElem((2, -2, 0), 1),
                            GElem((0, -1, -1), -1)], 2)
        M = build_matrix(g)
        adj = {(i, j) for i, j, _ in g.edges} | {(j, i) for i, j, _ in g.edges}
        for i in range(M.dim):
            for j in range(M.dim):
                if i != j and (i, j) not in adj:
                    assert M[i, j].is_zero()
        R = raw_matrix(M, 2)
        assert R[1, 1] == M[1, 1] * 3

    def test_disconnected(self):
        with pytest.raises(ValueError):
            build_matrix(complete_graph([GElem((0, 0), 1), GElem((3, 0), 1)], 1))

    def test_partial_of_A_definition(self):
        A = poly_A(3, 3)
        assert partials_A(2, 3)[0] == mp_partial(A, 1)


def test_full_support_law_needs_m_at_least_2q():
    # with m < 2q a full-support red edge need not saturate |l^-|_1 = q + 1
    ell = Edge((-1, -1))
    assert len(ell.support) == 2 and sum(ell.plus) == 0 and ell.is_valid(2)
    assert len(edge_coeff(ell, 2, 2)) > 1
