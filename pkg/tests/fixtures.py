"""Reference matrix polynomials shared by the test modules."""

from __future__ import annotations

import numpy as np

from hrnr.matpoly import MatrixPolynomial

I = 1j


def cubic5() -> MatrixPolynomial:
    """5x5 cubic whose rank-2 range has holes."""
    a2 = np.array(
        [
            [1, 2, 3, 4, 5],
            [0, -1, -2, -3, -4],
            [I, 2 * I, 3 * I, 4 * I, 5 * I],
            [-2, 1, 2, 1, 2],
            [0.3, 0, 0, 0, 0],
        ]
    )
    a1 = np.array(
        [[1, 2, 0, 0, 0], [2, 3, 4, 0, 0], [0, 4, 5, 6, 0], [0, 0, 6, 7, 8], [0, 0, 0, 7, 8]], dtype=complex
    )
    a0 = np.array(
        [
            [4, -I, 1, 0, -2],
            [I, 2 * I, -6 * I, 1, 0],
            [0, 1, 4, 2, 0],
            [-I, 3 * I, 0, 2, 4],
            [3, 1, 2, 4, 5],
        ]
    )
    return MatrixPolynomial([a0, a1, a2, 3 * np.eye(5)])


def bounded_quadratic() -> MatrixPolynomial:
    """4x4 quadratic with 0 outside the rank-2 range of its leading coefficient."""
    a2 = np.array([[1, 0, 0, 0], [0, I, 0, 0], [2, I, 0, 2], [-I, 0, -2, 8]])
    a1 = np.array([[I, 2, I, 3], [3, 0, 0, 0], [0, 4, 5, 0], [I, 0, I, 0]])
    a0 = np.array([[1, 2, 3, 4], [2, 3, 4, 5], [3, 4, 5, 6], [5, 6, 7, 8]], dtype=complex)
    return MatrixPolynomial([a0, a1, a2])


def singleton_pencil() -> MatrixPolynomial:
    """diag(3,0,0,4) lam + diag(0,2,-1,0): its rank-2 range is {0}."""
    return MatrixPolynomial([np.diag([0, 2, -1, 0]).astype(complex), np.diag([3, 0, 0, 4]).astype(complex)])


def singleton_isometry() -> np.ndarray:
    s = 1 / np.sqrt(3)
    r = np.sqrt(6) / 4
    return np.array([[0, s], [-r, s], [r, s], [0.5, 0]], dtype=complex)


def kron_pencil() -> tuple[MatrixPolynomial, np.ndarray, complex]:
    """I2 (x) (B lam + I2) with B = [[1,1],[0,0]], an isometry Q with Q*(I2 (x) B)Q = z I2, and z."""
    B = np.array([[1, 1], [0, 0]], dtype=complex)
    L = MatrixPolynomial([np.eye(4, dtype=complex), np.kron(np.eye(2), B)])
    x = np.array([1, 1]) / np.sqrt(2)
    Q = np.zeros((4, 2), dtype=complex)
    Q[:2, 0] = x
    Q[2:, 1] = x
    z = complex((x @ B @ x))
    return L, Q, z


def axis_quadratic() -> MatrixPolynomial:
    """D lam^2 + 4 I lam with D = diag(2i, 2i, -2i, -2i)."""
    D = np.diag([2 * I, 2 * I, -2 * I, -2 * I])
    return MatrixPolynomial([np.zeros((4, 4), dtype=complex), 4 * np.eye(4, dtype=complex), D])


def diag5() -> np.ndarray:
    return np.diag([3 + 4j, 4 - 1j, -3 - 2j, -3 + 0j, -3 + 3j])


def hull_intersection(eigenvalues, k: int) -> np.ndarray:
    """Vertices of the intersection of the convex hulls of all (n-k+1)-subsets of the eigenvalues.

    This is the rank-k range of a normal matrix with those eigenvalues. Empty
    intersections give an empty array; points and segments give 1 or 2 vertices.
    """
    from itertools import combinations

    from shapely.geometry import MultiPoint

    ev = list(eigenvalues)
    region = None
    for subset in combinations(ev, len(ev) - k + 1):
        hull = MultiPoint([(z.real, z.imag) for z in subset]).convex_hull
        region = hull if region is None else region.intersection(hull)
    if region.is_empty:
        return np.zeros(0, dtype=complex)
    if region.geom_type == "Polygon":
        return np.array([complex(x, y) for x, y in list(region.exterior.coords)[:-1]])
    return np.array([complex(x, y) for x, y in region.coords])


def random_normal(rng: np.random.Generator, n: int, spread: float = 3.0) -> tuple[np.ndarray, np.ndarray]:
    ev = spread * (rng.normal(size=n) + 1j * rng.normal(size=n))
    U = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))[0]
    return U @ np.diag(ev) @ U.conj().T, ev


def random_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_polynomial(rng: np.random.Generator, n: int, m: int) -> MatrixPolynomial:
    return MatrixPolynomial([random_matrix(rng, n) for _ in range(m + 1)])
