"""Generalized Sylvester matrix of compressed scalar polynomials and common-root extraction.

For an n-by-k isometry Q, the k^2 entries b_ij(lam) = q_i* L(lam) q_j vanish
together exactly at the points mu with Q* L(mu) Q = 0, which are members of
Lambda_k(L). The stacked resultant matrix measures the degree of their
greatest common divisor through its rank deficit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import DegenerateAllZero, DimensionError
from .matpoly import MatrixPolynomial, ScalarPoly, evaluate, scalar_entries
from .numkit import RANK_TOL, Isometry, as_cmatrix, random_isometry, svd_rank


@dataclass(frozen=True)
class SylvesterRecord:
    sigma: int
    tau: int
    matrix: np.ndarray
    rank: int
    delta: int
    lead_index: tuple[int, int]
    blocks: tuple[tuple[int, int], ...]  # entry (i, j) of each band block, lead first

    def verdict(self, m: int) -> bool:
        """True when rank < 2m, the rank condition for a common root."""
        return self.rank < 2 * m


def _band(coeffs: np.ndarray, rows: int, width: int) -> np.ndarray:
    """``rows`` shifted copies of the descending coefficient vector."""
    desc = coeffs[::-1]
    out = np.zeros((rows, width), dtype=np.complex128)
    for r in range(rows):
        out[r, r : r + desc.size] = desc
    return out


def build_sylvester(polys, tol: float = RANK_TOL) -> SylvesterRecord:
    """Stack resultant bands of the nonzero entries of a k-by-k polynomial array.

    The lexicographically first entry of top degree sigma contributes tau
    shifted rows, tau being the top degree among the other nonzero entries;
    every other nonzero entry, padded to degree tau, contributes sigma rows.
    Zero entries are skipped. delta = sigma + tau - rank is the degree of the
    greatest common divisor.
    """
    entries = [((i, j), p) for i, row in enumerate(polys) for j, p in enumerate(row) if not p.is_zero()]
    if not entries:
        raise DegenerateAllZero("every compressed polynomial vanishes")
    sigma = max(p.degree for _, p in entries)
    lead = next(e for e in entries if e[1].degree == sigma)
    rest = sorted((e for e in entries if e is not lead), key=lambda e: (-e[1].degree, e[0]))
    tau = max((p.degree for _, p in rest), default=0)
    width = sigma + tau
    bands = [_band(lead[1].coeffs, tau, width)]
    for _, p in rest:
        padded = np.zeros(tau + 1, dtype=np.complex128)
        padded[: p.coeffs.size] = p.coeffs
        bands.append(_band(padded, sigma, width))
    matrix = np.vstack(bands) if width else np.zeros((0, 0), dtype=np.complex128)
    rank = svd_rank(matrix, tol) if matrix.size else 0
    return SylvesterRecord(
        sigma, tau, matrix, rank, width - rank, lead[0], tuple([lead[0]] + [ij for ij, _ in rest])
    )


@dataclass(frozen=True)
class CommonRoots:
    roots: np.ndarray
    all_of_c: bool = False


def _isometry(Q) -> np.ndarray:
    return Q.matrix if isinstance(Q, Isometry) else as_cmatrix(Q, "Q")


def common_roots(L: MatrixPolynomial, k: int, Q, tol: float = 1e-8) -> CommonRoots:
    """Certified common roots of the compressed entries q_i* L(lam) q_j.

    Candidates are the roots of the lowest-degree nonzero entry. A candidate
    rho is kept when every entry satisfies |b_ij(rho)| <= tol * scale_ij(rho)
    and ||Q* L(rho) Q||_F <= tol * s(rho).
    """
    q = _isometry(Q)
    if q.shape != (L.n, k):
        raise DimensionError(f"isometry must be {L.n}x{k}, got {q.shape[0]}x{q.shape[1]}")
    polys = [p for row in scalar_entries(L, q) for p in row]
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return CommonRoots(np.zeros(0, dtype=np.complex128), True)
    pivot = min(nonzero, key=lambda p: p.degree)
    qh = np.conj(q.T)
    kept = []
    for rho in pivot.roots().tolist():
        if not all(abs(p(rho)) <= tol * p.residual_scale(rho) for p in nonzero):
            continue
        if np.linalg.norm(qh @ evaluate(L, rho) @ q) <= tol * L.scale_at(rho):
            kept.append(rho)
    return CommonRoots(np.array(kept, dtype=np.complex128))


@dataclass(frozen=True)
class ProbeHit:
    point: complex
    isometry: np.ndarray
    sample: int


@dataclass(frozen=True)
class ProbeResult:
    """Certified members found by random search; an empty result proves nothing."""

    hits: list[ProbeHit]
    all_of_c: bool

    @property
    def found(self) -> bool:
        return bool(self.hits) or self.all_of_c

    @property
    def points(self) -> np.ndarray:
        return np.array([h.point for h in self.hits], dtype=np.complex128)


def _polish(L: MatrixPolynomial, q0: np.ndarray, mu0: complex):
    """Least-squares descent on (Q, mu) for Q* L(mu) Q = 0, Q kept orthonormal by QR."""
    n, k = q0.shape
    scale = float(np.max(L.coefficient_norms()))

    def unpack(x):
        z = (x[: n * k] + 1j * x[n * k : 2 * n * k]).reshape(n, k)
        q, _ = np.linalg.qr(z)
        return q, complex(x[-2], x[-1])

    def resid(x):
        q, mu = unpack(x)
        r = (np.conj(q.T) @ evaluate(L, mu) @ q).ravel() / (scale * max(1.0, abs(mu)) ** L.m)
        return np.concatenate([r.real, r.imag])

    x0 = np.concatenate([q0.real.ravel(), q0.imag.ravel(), [mu0.real, mu0.imag]])
    sol = least_squares(resid, x0, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200)
    return unpack(sol.x)


def nonemptiness_probe(
    L: MatrixPolynomial, k: int, n_samples: int, seed: int = 0, tol: float = 1e-8, polish: bool = True
) -> ProbeResult:
    """Search for members through random isometries.

    Sample s draws ``random_isometry(n, k, seed, s)``. Generic isometries
    have no common root, so with ``polish`` each one, paired with a root of
    its trace polynomial, is first moved by least squares towards
    Q* L(mu) Q = 0. Only roots certified by :func:`common_roots` are returned.
    """
    if int(n_samples) < 1:
        raise ValueError("n_samples must be at least 1")
    if not 1 <= k <= L.n:
        raise DimensionError(f"need 1 <= k <= n, got k={k}, n={L.n}")
    hits: list[ProbeHit] = []
    for s in range(int(n_samples)):
        q = random_isometry(L.n, k, seed, s).matrix
        res = common_roots(L, k, q, tol)
        if res.all_of_c:
            return ProbeResult(hits, True)
        if res.roots.size == 0 and polish:
            trace = ScalarPoly([np.trace(np.conj(q.T) @ a @ q) for a in L.coeffs])
            starts = trace.roots() if trace.degree > 0 else np.zeros(1, dtype=np.complex128)
            mu0 = complex(starts[s % starts.size])
            q, _ = _polish(L, q, mu0)
            res = common_roots(L, k, q, tol)
            if res.all_of_c:
                return ProbeResult(hits, True)
        hits.extend(ProbeHit(complex(r), q, s) for r in res.roots.tolist())
    return ProbeResult(hits, False)
