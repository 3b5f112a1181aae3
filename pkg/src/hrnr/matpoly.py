"""Matrix polynomials L(lam) = A_0 + A_1 lam + ... + A_m lam^m and their transforms."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import DegreeError, DimensionError
from .numkit import Isometry, as_cmatrix

# relative size below which a derived coefficient counts as zero
DROP_RTOL = 1e-14


def _trim(coeffs: list[np.ndarray], atol: float) -> tuple[list[np.ndarray], bool]:
    shrunk = False
    while len(coeffs) > 1 and np.linalg.norm(coeffs[-1]) <= atol:
        coeffs.pop()
        shrunk = True
    return coeffs, shrunk


class MatrixPolynomial:
    """Square matrix polynomial stored by ascending powers.

    ``coeffs[j]`` multiplies ``lam**j``. Trailing zero coefficients are dropped
    on construction and the drop is recorded in ``degree_shrunk``; the only
    polynomial allowed a zero leading coefficient is the zero polynomial
    (degree 0, ``A_0 = 0``).
    """

    def __init__(self, coeffs: Sequence, *, degree_shrunk: bool = False, atol: float = 0.0):
        if len(coeffs) == 0:
            raise DegreeError("a matrix polynomial needs at least one coefficient")
        mats = [as_cmatrix(c, f"A_{j}") for j, c in enumerate(coeffs)]
        n = mats[0].shape[0]
        for j, a in enumerate(mats):
            if a.shape != (n, n):
                raise DimensionError(f"A_{j} has shape {a.shape}, expected ({n}, {n})")
        mats, shrunk = _trim(mats, atol)
        for a in mats:
            a.setflags(write=False)
        self.coeffs: tuple[np.ndarray, ...] = tuple(mats)
        self.degree_shrunk = degree_shrunk or shrunk

    @property
    def n(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def m(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> np.ndarray:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.m == 0 and not np.any(self.coeffs[0])

    def coefficient_norms(self) -> np.ndarray:
        return np.array([np.linalg.norm(a) for a in self.coeffs])

    def scale_at(self, mu) -> np.ndarray | float:
        """s(mu) = sum_j ||A_j||_F max(1, |mu|)^j, the size of L(mu) used for tolerances."""
        r = np.maximum(1.0, np.abs(np.asarray(mu)))
        norms = self.coefficient_norms()
        out = np.zeros_like(r, dtype=float)
        for nj in norms[::-1]:
            out = out * r + nj
        return out if out.ndim else float(out)

    def __call__(self, mu) -> np.ndarray:
        return evaluate(self, mu)

    def __repr__(self) -> str:
        return f"MatrixPolynomial(n={self.n}, m={self.m}, degree_shrunk={self.degree_shrunk})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixPolynomial):
            return NotImplemented
        if other.m != self.m or other.n != self.n:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def allclose(self, other: "MatrixPolynomial", atol: float = 1e-12) -> bool:
        if other.m != self.m or other.n != self.n:
            return False
        return all(np.allclose(a, b, rtol=0.0, atol=atol) for a, b in zip(self.coeffs, other.coeffs))


def _derived(coeffs: list[np.ndarray], reference: MatrixPolynomial, shrunk: bool = False) -> MatrixPolynomial:
    atol = DROP_RTOL * max(float(np.max(reference.coefficient_norms())), 1e-300)
    return MatrixPolynomial(coeffs, degree_shrunk=shrunk, atol=atol)


def pencil(a, b) -> MatrixPolynomial:
    """The pencil A*lam - B as a degree-1 matrix polynomial."""
    a = as_cmatrix(a, "A")
    return MatrixPolynomial([-as_cmatrix(b, "B"), a])


def identity_pencil(a) -> MatrixPolynomial:
    """I*lam - A, whose higher rank numerical range is that of the matrix A."""
    a = as_cmatrix(a, "A")
    return pencil(np.eye(a.shape[0]), a)


def evaluate(L: MatrixPolynomial, mu) -> np.ndarray:
    """Horner evaluation; ``mu`` may be an array, giving a stack of matrices."""
    mu = np.asarray(mu, dtype=np.complex128)
    if mu.ndim == 0:
        out = L.coeffs[-1].copy()
        for a in L.coeffs[-2::-1]:
            out = out * mu + a
        return out
    w = mu[..., None, None]
    out = np.broadcast_to(L.coeffs[-1], mu.shape + L.coeffs[-1].shape).copy()
    for a in L.coeffs[-2::-1]:
        out *= w
        out += a
    return out


def shift(L: MatrixPolynomial, alpha: complex) -> MatrixPolynomial:
    """Coefficients of L(lam + alpha)."""
    alpha = complex(alpha)
    m = L.m
    new = []
    for i in range(m + 1):
        acc = np.zeros_like(L.coeffs[0])
        for j in range(i, m + 1):
            acc = acc + comb(j, i) * alpha ** (j - i) * L.coeffs[j]
        new.append(acc)
    return MatrixPolynomial(new, degree_shrunk=L.degree_shrunk)


def reverse(L: MatrixPolynomial) -> MatrixPolynomial:
    """sum_j A_{m-j} lam^j. A zero constant term makes the degree drop (flagged)."""
    return _derived(list(L.coeffs[::-1]), L)


def scaled(L: MatrixPolynomial, c: complex) -> MatrixPolynomial:
    return MatrixPolynomial([c * a for a in L.coeffs])


def compress(L: MatrixPolynomial, Q) -> MatrixPolynomial:
    """The k-by-k polynomial Q* L(lam) Q."""
    q = Q.matrix if isinstance(Q, Isometry) else as_cmatrix(Q, "Q")
    if q.shape[0] != L.n:
        raise DimensionError(f"isometry has {q.shape[0]} rows, polynomial has size {L.n}")
    qh = np.conj(q.T)
    return _derived([qh @ a @ q for a in L.coeffs], L)


def direct_sum(L: MatrixPolynomial, copies: int) -> MatrixPolynomial:
    """L + L + ... + L (block diagonal, ``copies`` blocks)."""
    return MatrixPolynomial([scipy.linalg.block_diag(*([a] * copies)) for a in L.coeffs])


def unitary_similarity(L: MatrixPolynomial, U) -> MatrixPolynomial:
    """U* A_j U for every coefficient."""
    u = as_cmatrix(U, "U")
    uh = np.conj(u.T)
    return MatrixPolynomial([uh @ a @ u for a in L.coeffs])


class ScalarPoly:
    """Scalar polynomial with ascending coefficients; the zero polynomial has degree -1."""

    def __init__(self, coeffs, atol: float = 0.0):
        c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)).copy()
        nz = np.flatnonzero(np.abs(c) > atol)
        c = c[: nz[-1] + 1] if nz.size else c[:0]
        c.setflags(write=False)
        self.coeffs = c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, x):
        x = np.asarray(x, dtype=np.complex128)
        out = np.zeros_like(x)
        for c in self.coeffs[::-1]:
            out = out * x + c
        return out if out.ndim else complex(out)

    def roots(self) -> np.ndarray:
        """Roots from the eigenvalues of the companion matrix."""
        d = self.degree
        if d < 0:
            raise DegreeError("the zero polynomial has no finite root set")
        if d == 0:
            return np.zeros(0, dtype=np.complex128)
        c = self.coeffs
        comp = np.zeros((d, d), dtype=np.complex128)
        comp[1:, :-1] = np.eye(d - 1)
        comp[:, -1] = -c[:-1] / c[-1]
        return np.linalg.eigvals(comp)

    def residual_scale(self, x) -> float:
        """sum_l |b_l| max(1, |x|)^l."""
        r = max(1.0, abs(x))
        return float(sum(abs(c) * r**l for l, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        return f"ScalarPoly({self.coeffs.tolist()})"


def scalar_entries(L: MatrixPolynomial, Q) -> list[list[ScalarPoly]]:
    """Entry (i, j) is the scalar polynomial q_i* L(lam) q_j."""
    q = Q.matrix if isinstance(Q, Isometry) else as_cmatrix(Q, "Q")
    if q.shape[0] != L.n:
        raise DimensionError(f"isometry has {q.shape[0]} rows, polynomial has size {L.n}")
    qh = np.conj(q.T)
    stack = np.array([qh @ a @ q for a in L.coeffs])  # (m+1, k, k)
    atol = DROP_RTOL * max(float(np.max(L.coefficient_norms())), 1e-300)
    k = q.shape[1]
    return [[ScalarPoly(stack[:, i, j], atol=atol) for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class Pencil:
    """The pencil A*lam - B."""

    A: np.ndarray
    B: np.ndarray

    def as_polynomial(self) -> MatrixPolynomial:
        return pencil(self.A, self.B)

    def __call__(self, mu) -> np.ndarray:
        return self.A * mu - self.B


def companion(L: MatrixPolynomial) -> Pencil:
    """First companion linearization C_L(lam) = A*lam - B of size mn.

    ``A = diag(I, ..., I, A_m)``; ``B`` carries identities on the block
    superdiagonal and ``-A_0, ..., -A_{m-1}`` in its last block row, so that
    ``det C_L(lam) = det L(lam)``.
    """
    m, n = L.m, L.n
    if m < 1:
        raise DegreeError("companion linearization needs degree >= 1")
    N = m * n
    a = np.eye(N, dtype=np.complex128)
    a[(m - 1) * n :, (m - 1) * n :] = L.coeffs[m]
    b = np.zeros((N, N), dtype=np.complex128)
    for i in range(m - 1):
        b[i * n : (i + 1) * n, (i + 1) * n : (i + 2) * n] = np.eye(n)
    for j in range(m):
        b[(m - 1) * n :, j * n : (j + 1) * n] = -L.coeffs[j]
    return Pencil(a, b)


def polynomial_eigenvalues(L: MatrixPolynomial) -> np.ndarray:
    """Finite eigenvalues of L via the generalized problem of its companion pencil."""
    c = companion(L)
    w = scipy.linalg.eigvals(c.B, c.A)
    return w[np.isfinite(w)]
