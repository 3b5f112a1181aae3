import numpy as np
import pytest
from fixtures import random_polynomial

from hrnr.errors import DegreeError, DimensionError
from hrnr.matpoly import (
    MatrixPolynomial,
    ScalarPoly,
    companion,
    compress,
    direct_sum,
    evaluate,
    identity_pencil,
    pencil,
    polynomial_eigenvalues,
    reverse,
    scalar_entries,
    scaled,
    shift,
    unitary_similarity,
)
from hrnr.numkit import random_isometry, random_unitary


@pytest.fixture
def poly():
    return random_polynomial(np.random.default_rng(1), 3, 3)


def direct(L, mu):
    return sum(a * mu**j for j, a in enumerate(L.coeffs))


def test_construction_trims_and_validates():
    z = np.zeros((2, 2))
    L = MatrixPolynomial([np.eye(2), np.eye(2), z])
    assert L.m == 1 and L.degree_shrunk
    assert MatrixPolynomial([z]).is_zero()
    with pytest.raises(DimensionError):
        MatrixPolynomial([np.eye(2), np.eye(3)])
    with pytest.raises(DegreeError):
        MatrixPolynomial([])


def test_evaluate_scalar_and_batched(poly):
    mus = np.array([0.3 - 1j, 2.0, -1.5j])
    stack = evaluate(poly, mus)
    for mu, m in zip(mus, stack):
        assert np.allclose(m, direct(poly, mu))
        assert np.allclose(poly(mu), m)


def test_scale_at():
    L = MatrixPolynomial([np.eye(2), 2 * np.eye(2)])
    assert L.scale_at(0.5) == pytest.approx(np.sqrt(2) * 3)
    assert L.scale_at(3.0) == pytest.approx(np.sqrt(2) * 7)


def test_shift_reverse_scale(poly):
    alpha, mu = 0.7 - 0.2j, 1.1 + 0.4j
    assert np.allclose(shift(poly, alpha)(mu), poly(mu + alpha))
    assert np.allclose(reverse(poly)(mu), mu**poly.m * poly(1 / mu))
    assert np.allclose(scaled(poly, 2j)(mu), 2j * poly(mu))


def test_reverse_flags_degree_drop():
    L = MatrixPolynomial([np.zeros((2, 2)), np.eye(2), np.eye(2)])
    R = reverse(L)
    assert R.m == 1 and R.degree_shrunk


def test_compress_direct_sum_unitary(poly):
    Q = random_isometry(3, 2, seed=4)
    mu = 0.5 + 0.5j
    q = Q.matrix
    assert np.allclose(compress(poly, Q)(mu), q.conj().T @ poly(mu) @ q)
    D = direct_sum(poly, 2)
    assert D.n == 6 and np.allclose(D(mu)[3:, 3:], poly(mu))
    U = random_unitary(3, seed=2)
    assert np.allclose(unitary_similarity(poly, U)(mu), U.conj().T @ poly(mu) @ U)
    with pytest.raises(DimensionError):
        compress(poly, random_isometry(4, 2))


def test_pencils():
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    assert np.allclose(identity_pencil(a)(2.0), 2 * np.eye(2) - a)
    assert np.allclose(pencil(a, np.eye(2))(1j), 1j * a - np.eye(2))


def test_companion_shape_and_determinant(poly):
    C = companion(poly)
    assert C.A.shape == (9, 9)
    for mu in (0.3 + 0.1j, -1.2j, 2.0):
        assert np.linalg.det(C(mu)) == pytest.approx(np.linalg.det(poly(mu)), rel=1e-9)
    assert np.allclose(C.as_polynomial()(0.4), C(0.4))


def test_companion_of_scalar_quadratic():
    L = MatrixPolynomial([[[1.0]], [[0.0]], [[1.0]]])  # lam^2 + 1
    C = companion(L)
    assert np.allclose(C.B, [[0, 1], [-1, 0]])
    with pytest.raises(DegreeError):
        companion(MatrixPolynomial([np.eye(2)]))


def test_polynomial_eigenvalues_are_singular_points(poly):
    ev = polynomial_eigenvalues(poly)
    assert ev.size == poly.n * poly.m
    for lam in ev:
        s = np.linalg.svd(poly(lam), compute_uv=False)
        assert s[-1] <= 1e-8 * s[0]


def test_scalar_poly():
    p = ScalarPoly([2, -3, 1])  # (x-1)(x-2)
    assert p.degree == 2
    assert np.allclose(np.sort_complex(p.roots()), [1, 2])
    assert p(3) == 2
    assert p.residual_scale(2.0) == pytest.approx(2 + 6 + 4)
    assert ScalarPoly([0, 0]).is_zero()
    assert ScalarPoly([5]).roots().size == 0
    with pytest.raises(DegreeError):
        ScalarPoly([0]).roots()


def test_scalar_entries_match_compression(poly):
    Q = random_isometry(3, 2, seed=9)
    entries = scalar_entries(poly, Q)
    mu = -0.4 + 0.9j
    m = Q.matrix.conj().T @ poly(mu) @ Q.matrix
    for i in range(2):
        for j in range(2):
            assert entries[i][j](mu) == pytest.approx(m[i, j])
