"""Matrix polynomials used by the demo scripts."""

import numpy as np

from hrnr import MatrixPolynomial

I = 1j


def diagonal5() -> np.ndarray:
    return np.diag([3 + 4j, 4 - 1j, -3 - 2j, -3 + 0j, -3 + 3j])


def singleton_pencil() -> MatrixPolynomial:
    return MatrixPolynomial([np.diag([0, 2, -1, 0]).astype(complex), np.diag([3, 0, 0, 4]).astype(complex)])


def axis_quadratic() -> MatrixPolynomial:
    D = np.diag([2 * I, 2 * I, -2 * I, -2 * I])
    return MatrixPolynomial([np.zeros((4, 4), dtype=complex), 4 * np.eye(4, dtype=complex), D])


def bounded_quadratic() -> MatrixPolynomial:
    a2 = np.array([[1, 0, 0, 0], [0, I, 0, 0], [2, I, 0, 2], [-I, 0, -2, 8]])
    a1 = np.array([[I, 2, I, 3], [3, 0, 0, 0], [0, 4, 5, 0], [I, 0, I, 0]])
    a0 = np.array([[1, 2, 3, 4], [2, 3, 4, 5], [3, 4, 5, 6], [5, 6, 7, 8]], dtype=complex)
    return MatrixPolynomial([a0, a1, a2])


def cubic5() -> MatrixPolynomial:
    a2 = np.array(
        [[1, 2, 3, 4, 5], [0, -1, -2, -3, -4], [I, 2 * I, 3 * I, 4 * I, 5 * I], [-2, 1, 2, 1, 2], [0.3, 0, 0, 0, 0]]
    )
    a1 = np.array(
        [[1, 2, 0, 0, 0], [2, 3, 4, 0, 0], [0, 4, 5, 6, 0], [0, 0, 6, 7, 8], [0, 0, 0, 7, 8]], dtype=complex
    )
    a0 = np.array(
        [[4, -I, 1, 0, -2], [I, 2 * I, -6 * I, 1, 0], [0, 1, 4, 2, 0], [-I, 3 * I, 0, 2, 4], [3, 1, 2, 4, 5]]
    )
    return MatrixPolynomial([a0, a1, a2, 3 * np.eye(5)])
