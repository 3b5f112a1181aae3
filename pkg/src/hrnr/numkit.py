"""Dense complex linear algebra primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_cmatrix`
is the single validation point for anything coming from outside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotAnIsometry, NumericError

RANK_TOL = 1e-10
_MASK64 = (1 << 64) - 1


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a 2-D complex128 array, rejecting NaN/Inf entries."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericError(f"{name} has non-finite entries")
    return m


def _require_square(m: np.ndarray, name: str = "matrix") -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """(A + A*)/2, batched over leading axes."""
    return 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))


def skew_part(a: np.ndarray) -> np.ndarray:
    """(A - A*)/(2i), so that A = hermitian_part(A) + 1j*skew_part(A)."""
    return -0.5j * (a - np.conj(np.swapaxes(a, -1, -2)))


def jacobi_eigenvalues(h: np.ndarray, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns the diagonal after convergence, unsorted.
    """
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy()
    eps = np.finfo(float).eps
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= eps * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= eps * eps * scale:
                    continue
                phase = np.conj(apq) / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(tau) + np.hypot(1.0, tau))
                if tau < 0:
                    t = -t
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                g = np.array([[c, s], [-s * phase, c * phase]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = np.conj(g.T) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    return a.diagonal().real.copy()


def hermitian_eigenvalues(h, tol: float = 1e-8) -> np.ndarray:
    """Eigenvalues of the Hermitian part of ``h``, sorted descending.

    ``h`` is symmetrized first; ``tol`` bounds the tolerated skew component
    relative to ``||h||_F`` and larger asymmetry raises :class:`NumericError`.
    """
    m = as_cmatrix(h, "H")
    _require_square(m, "H")
    hs = hermitian_part(m)
    scale = np.linalg.norm(m)
    if np.linalg.norm(m - hs) > tol * scale:
        raise NumericError("H is not Hermitian within tolerance")
    return np.sort(jacobi_eigenvalues(hs))[::-1]


def svd_rank(m, tol: float = RANK_TOL) -> int:
    """Number of singular values above ``tol * sigma_max``."""
    a = as_cmatrix(m, "M")
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


@dataclass(frozen=True)
class Isometry:
    """An n-by-k matrix with orthonormal columns."""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]

    @property
    def orthonormality_defect(self) -> float:
        q = self.matrix
        return float(np.linalg.norm(np.conj(q.T) @ q - np.eye(q.shape[1])))

    @classmethod
    def from_matrix(cls, q, max_defect: float = 1e-6) -> "Isometry":
        """Validate ``q`` and snap it to the nearest exact isometry.

        Raises :class:`NotAnIsometry` when ``||Q*Q - I||_F > max_defect``.
        """
        q = as_cmatrix(q, "Q")
        n, k = q.shape
        if k > n:
            raise DimensionError(f"isometry needs k <= n, got {n}x{k}")
        defect = float(np.linalg.norm(np.conj(q.T) @ q - np.eye(k)))
        if defect > max_defect:
            raise NotAnIsometry(defect)
        # polar factor: closest matrix with orthonormal columns
        u, _, vh = np.linalg.svd(q, full_matrices=False)
        return cls(u @ vh)


def _complex_gaussians(n: int, k: int, seed: int, index: int) -> np.ndarray:
    bitgen = np.random.Philox(key=np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64))
    u = np.random.Generator(bitgen).random((2, n * k))
    # Box-Muller: one uniform pair gives the real and imaginary part
    radius = np.sqrt(-2.0 * np.log1p(-u[0]))
    angle = 2.0 * np.pi * u[1]
    z = radius * (np.cos(angle) + 1j * np.sin(angle)) / np.sqrt(2.0)
    return z.reshape(n, k)


def random_isometry(n: int, k: int, seed: int = 0, index: int = 0) -> Isometry:
    """Seeded random n-by-k isometry.

    Orthonormalizes an n-by-k standard complex Gaussian matrix. The entries
    come from a counter-based generator keyed by ``(seed, index)``, so sample
    ``index`` of a stream is reproducible on its own.
    """
    if not 1 <= k <= n:
        raise DimensionError(f"need 1 <= k <= n, got n={n}, k={k}")
    z = _complex_gaussians(n, k, seed, index)
    q, r = np.linalg.qr(z)
    d = r.diagonal()
    q = q * (d / np.abs(d))
    return Isometry(q)


def random_unitary(n: int, seed: int = 0, index: int = 0) -> np.ndarray:
    return random_isometry(n, n, seed, index).matrix


def complete_basis(q: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of range(q)."""
    n, k = q.shape
    u, _, _ = np.linalg.svd(q, full_matrices=True)
    return u[:, k:]
