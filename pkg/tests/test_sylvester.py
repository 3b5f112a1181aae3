import numpy as np
import pytest
from fixtures import (
    axis_quadratic,
    bounded_quadratic,
    kron_pencil,
    random_matrix,
    random_polynomial,
    singleton_isometry,
    singleton_pencil,
)
from numpy.polynomial import polynomial as P

from hrnr.errors import DegenerateAllZero, DimensionError
from hrnr.matpoly import MatrixPolynomial, ScalarPoly, scalar_entries
from hrnr.matrix_range import Status
from hrnr.numkit import random_isometry
from hrnr.poly_range import member
from hrnr.sylvester import build_sylvester, common_roots, nonemptiness_probe

NON_OUT = (Status.IN, Status.BORDER)


def planted(rng, k, deg, gcd_roots):
    """k-by-k array of random degree-``deg`` polynomials times a shared factor."""
    g = P.polyfromroots(gcd_roots) if len(gcd_roots) else np.ones(1)
    rand = lambda: rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    return [[ScalarPoly(P.polymul(rand(), g)) for _ in range(k)] for _ in range(k)]


class TestBuild:
    def test_singleton_full_rank(self):
        rec = build_sylvester(scalar_entries(singleton_pencil(), singleton_isometry()))
        assert (rec.sigma, rec.tau, rec.rank, rec.delta) == (1, 1, 2, 0)
        assert not rec.verdict(1)

    def test_kron_shared_root(self):
        L, Q, z = kron_pencil()
        rec = build_sylvester(scalar_entries(L, Q))
        assert (rec.rank, rec.delta) == (1, 1)
        assert rec.verdict(1)
        roots = common_roots(L, 2, Q).roots
        assert roots.size == 1 and abs(roots[0] + 1 / z) < 1e-12

    def test_axis_two_roots(self):
        L = axis_quadratic()
        Q = np.eye(4)[:, :2]
        assert build_sylvester(scalar_entries(L, Q)).delta == 2
        roots = common_roots(L, 2, Q).roots
        assert sorted(np.round(roots, 10).tolist(), key=abs) == [0, 2j]

    @pytest.mark.parametrize("k,m", [(1, 2), (2, 1), (2, 3), (3, 2)])
    def test_generic_shape(self, k, m):
        rng = np.random.default_rng(10 * k + m)
        L = random_polynomial(rng, 4, m)
        rec = build_sylvester(scalar_entries(L, random_isometry(4, k, 0, 0).matrix))
        if k == 1:
            assert rec.matrix.shape == (0, m)
        else:
            assert rec.matrix.shape == (k * k * m, 2 * m)
            assert rec.delta == 0

    @pytest.mark.parametrize("r", [0, 1, 2])
    def test_planted_gcd_degree(self, r):
        rng = np.random.default_rng(r)
        roots = rng.normal(size=r) + 1j * rng.normal(size=r)
        assert build_sylvester(planted(rng, 2, 3, roots)).delta == r

    def test_zero_entry_ignored(self):
        rng = np.random.default_rng(5)
        polys = planted(rng, 2, 2, [0.5j])
        rec = build_sylvester(polys)
        polys[1][0] = ScalarPoly([0.0])
        rec0 = build_sylvester(polys)
        assert (rec0.rank, rec0.delta) == (rec.rank, rec.delta)
        assert (1, 0) not in rec0.blocks

    def test_lead_is_first_of_top_degree(self):
        polys = [[ScalarPoly([1, 2]), ScalarPoly([1, 0, 3])], [ScalarPoly([2, 0, 1]), ScalarPoly([1])]]
        rec = build_sylvester(polys)
        assert rec.lead_index == (0, 1)
        assert rec.blocks == ((0, 1), (1, 0), (0, 0), (1, 1))
        assert (rec.sigma, rec.tau) == (2, 2)

    def test_all_zero_raises(self):
        with pytest.raises(DegenerateAllZero):
            build_sylvester([[ScalarPoly([0.0]), ScalarPoly([])], [ScalarPoly([0, 0]), ScalarPoly([0.0])]])


class TestCommonRoots:
    def test_generic_isometry_has_none(self):
        L = bounded_quadratic()
        for s in range(5):
            assert common_roots(L, 2, random_isometry(4, 2, 3, s)).roots.size == 0

    def test_roots_are_members(self):
        L, Q, _ = kron_pencil()
        for rho in common_roots(L, 2, Q).roots.tolist():
            assert member(L, 2, rho).status in NON_OUT

    def test_isotropic_is_everything(self):
        rng = np.random.default_rng(0)
        coeffs = []
        for _ in range(3):
            a = random_matrix(rng, 4)
            a[:2, :2] = 0
            coeffs.append(a)
        res = common_roots(MatrixPolynomial(coeffs), 2, np.eye(4)[:, :2])
        assert res.all_of_c and res.roots.size == 0

    def test_shape_checked(self):
        with pytest.raises(DimensionError):
            common_roots(bounded_quadratic(), 2, np.eye(4)[:, :3])


class TestProbe:
    def test_bounded_quadratic_members(self):
        L = bounded_quadratic()
        res = nonemptiness_probe(L, 2, 6, seed=1)
        assert res.found and not res.all_of_c
        for h in res.hits:
            q = h.isometry
            assert np.linalg.norm(q.conj().T @ q - np.eye(2)) < 1e-10
            assert member(L, 2, h.point).status in NON_OUT

    def test_deterministic(self):
        L = bounded_quadratic()
        a = nonemptiness_probe(L, 2, 3, seed=4)
        b = nonemptiness_probe(L, 2, 3, seed=4)
        assert np.array_equal(a.points, b.points)

    def test_without_polish_is_inconclusive(self):
        res = nonemptiness_probe(bounded_quadratic(), 2, 4, seed=0, polish=False)
        assert not res.found

    def test_rank_one_always_finds(self):
        res = nonemptiness_probe(bounded_quadratic(), 1, 2, polish=False)
        assert res.points.size >= 2

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            nonemptiness_probe(bounded_quadratic(), 2, 0)
        with pytest.raises(DimensionError):
            nonemptiness_probe(bounded_quadratic(), 5, 1)
