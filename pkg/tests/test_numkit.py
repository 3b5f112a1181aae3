import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from hrnr.errors import DimensionError, NotAnIsometry, NumericError
from hrnr.numkit import (
    Isometry,
    as_cmatrix,
    complete_basis,
    hermitian_eigenvalues,
    hermitian_part,
    jacobi_eigenvalues,
    random_isometry,
    random_unitary,
    skew_part,
    svd_rank,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def square(n):
    return hnp.arrays(np.float64, (2, n, n), elements=finite).map(lambda a: a[0] + 1j * a[1])


def test_as_cmatrix_promotes_and_validates():
    assert as_cmatrix(3).shape == (1, 1)
    assert as_cmatrix([[1, 2]]).dtype == np.complex128
    with pytest.raises(NumericError):
        as_cmatrix([[np.nan]])
    with pytest.raises(DimensionError):
        as_cmatrix(np.zeros((2, 2, 2)))
    with pytest.raises(DimensionError):
        as_cmatrix(np.zeros((0, 3)))


def test_hermitian_and_skew_parts_recombine():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h, s = hermitian_part(a), skew_part(a)
    assert np.allclose(h, h.conj().T) and np.allclose(s, s.conj().T)
    assert np.allclose(h + 1j * s, a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7).flatmap(square))
def test_jacobi_matches_lapack(a):
    h = hermitian_part(a)
    got = np.sort(jacobi_eigenvalues(h))
    want = np.linalg.eigvalsh(h)
    assert np.allclose(got, want, atol=1e-10 * (1 + np.abs(want).max()))


def test_hermitian_eigenvalues_descending_and_rejects_skew():
    vals = hermitian_eigenvalues(np.diag([1.0, 3.0, -2.0]))
    assert vals.tolist() == [3.0, 1.0, -2.0]
    with pytest.raises(NumericError):
        hermitian_eigenvalues([[0, 1], [-1, 0]])


def test_svd_rank():
    assert svd_rank(np.outer([1, 2, 3], [1, 1j, 0])) == 1
    assert svd_rank(np.eye(3)) == 3
    assert svd_rank(np.zeros((2, 2))) == 0
    assert svd_rank(np.diag([1, 1e-12])) == 1
    with pytest.raises(ValueError):
        svd_rank(np.eye(2), tol=0)


def test_isometry_snap_and_reject():
    q = random_isometry(5, 2, seed=3).matrix
    snapped = Isometry.from_matrix(q + 1e-8)
    assert snapped.orthonormality_defect < 1e-12
    with pytest.raises(NotAnIsometry) as e:
        Isometry.from_matrix(2 * q)
    assert e.value.defect > 1
    with pytest.raises(DimensionError):
        Isometry.from_matrix(np.ones((2, 3)))


def test_random_isometry_reproducible_per_index():
    a = random_isometry(6, 3, seed=11, index=5).matrix
    b = random_isometry(6, 3, seed=11, index=5).matrix
    c = random_isometry(6, 3, seed=11, index=6).matrix
    assert np.array_equal(a, b)
    assert not np.allclose(a, c)
    assert np.allclose(a.conj().T @ a, np.eye(3))
    with pytest.raises(DimensionError):
        random_isometry(2, 3)


def test_random_unitary_and_complement():
    u = random_unitary(4, seed=1)
    assert np.allclose(u.conj().T @ u, np.eye(4))
    q = u[:, :2]
    c = complete_basis(q)
    assert c.shape == (4, 2)
    assert np.allclose(q.conj().T @ c, 0, atol=1e-12)
