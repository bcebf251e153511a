"""Exact integer/rational linear algebra."""

import random
from fractions import Fraction
from math import inf

import pytest

from mixsym.zlattice import (LatticeError, charpoly, det_rational, hnf,
                             identity_matrix, kernel_basis, lcm_list, mat_mul,
                             mat_rank, mat_transpose, quotient_by_rows, snf,
                             solve_rational, sublattice_index, vec_mat)


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def is_unimodular(u):
    return abs(det_rational(u)) == 1


class TestHNF:
    def test_transform_identity(self):
        rng = random.Random(1)
        for _ in range(50):
            a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            h, u = hnf(a)
            assert mat_mul(u, a) == h
            assert is_unimodular(u)

    def test_echelon_shape(self):
        rng = random.Random(2)
        for _ in range(50):
            a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            h, _ = hnf(a)
            pivots = []
            for row in h:
                nz = next((j for j, x in enumerate(row) if x), None)
                if nz is None:
                    continue
                assert row[nz] > 0
                pivots.append(nz)
            assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
            # entries above each pivot reduced into [0, pivot)
            for r, row in enumerate(h):
                nz = next((j for j, x in enumerate(row) if x), None)
                if nz is None:
                    continue
                for i in range(r):
                    assert 0 <= h[i][nz] < row[nz]

    def test_known_example(self):
        h, u = hnf([[2, 4], [1, 3]])
        assert mat_mul(u, [[2, 4], [1, 3]]) == h
        assert h == [[1, 1], [0, 2]]

    def test_rank(self):
        assert mat_rank([[1, 2], [2, 4]]) == 1
        assert mat_rank(identity_matrix(4)) == 4


class TestSNF:
    def test_decomposition(self):
        rng = random.Random(3)
        for _ in range(50):
            a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            dec = snf(a)
            assert mat_mul(dec.u, mat_mul(dec.d, dec.v)) == a
            assert is_unimodular(dec.u) and is_unimodular(dec.v)
            assert mat_mul(dec.v, dec.vinv) == identity_matrix(len(dec.v))
            invs = dec.invariants
            for x, y in zip(invs, invs[1:]):
                assert y % x == 0
            # off-diagonal zero
            for i, row in enumerate(dec.d):
                for j, x in enumerate(row):
                    if i != j:
                        assert x == 0

    def test_known_invariants(self):
        assert snf([[2, 0], [0, 3]]).invariants == [1, 6]
        assert snf([[2, 0], [0, 2]]).invariants == [2, 2]


class TestQuotient:
    def test_section_properties(self):
        rng = random.Random(4)
        for _ in range(30):
            n = rng.randint(1, 5)
            rel = random_matrix(rng, rng.randint(0, 4), n)
            q = quotient_by_rows(rel, n)
            if rel:
                assert all(x == 0 for row in mat_mul(rel, q.project) for x in row)
            assert mat_mul(q.lift, q.project) == identity_matrix(q.rank)

    def test_torsion(self):
        q = quotient_by_rows([[2, 0]], 2)
        assert q.rank == 1 and q.torsion == [2]

    def test_dimension_error(self):
        with pytest.raises(LatticeError):
            quotient_by_rows([[1, 2, 3]], 2)


class TestKernelSolve:
    def test_kernel(self):
        rng = random.Random(5)
        for _ in range(30):
            a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            for row in kernel_basis(a):
                assert all(x == 0 for x in vec_mat(row, a))
            assert len(kernel_basis(a)) == len(a) - mat_rank(a)

    def test_solve_deterministic_free_variable(self):
        assert solve_rational([[1], [1]], [2]) == [Fraction(2), Fraction(0)]

    def test_solve_consistency(self):
        rng = random.Random(6)
        for _ in range(30):
            a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            x = [rng.randint(-5, 5) for _ in range(len(a))]
            b = vec_mat(x, a)
            sol = solve_rational(a, b)
            assert sol is not None
            assert vec_mat(sol, a) == [Fraction(v) for v in b]

    def test_solve_no_solution(self):
        assert solve_rational([[1, 0]], [0, 1]) is None


class TestIndexDetCharpoly:
    def test_index_diag(self):
        assert sublattice_index(identity_matrix(2), [[2, 0], [0, 3]]) == 6

    def test_index_rank_drop(self):
        assert sublattice_index(identity_matrix(2), [[1, 0]]) == inf

    def test_index_outside(self):
        with pytest.raises(LatticeError):
            sublattice_index([[2, 0], [0, 2]], [[1, 0], [0, 1]])

    def test_det(self):
        assert det_rational([[1, 2], [3, 4]]) == -2
        assert det_rational([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]) == Fraction(1, 6)

    def test_charpoly_matches_det_and_trace(self):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(1, 4)
            a = random_matrix(rng, n, n)
            c = charpoly(a)
            assert c[-1] == 1
            assert c[0] == (-1) ** n * det_rational(a)
            assert -c[n - 1] == sum(a[i][i] for i in range(n))

    def test_lcm(self):
        assert lcm_list([4, 6, 10]) == 60

    def test_transpose_roundtrip(self):
        a = [[1, 2, 3], [4, 5, 6]]
        assert mat_transpose(mat_transpose(a)) == a
