"""Higher rank numerical range of a matrix polynomial.

mu lies in Lambda_k(L) iff 0 lies in Lambda_k(L(mu)), so every query reduces
to the constant-matrix sign test of :mod:`hrnr.matrix_range` on the
evaluated matrix, with a BORDER half-width proportional to the size
s(mu) = sum_j ||A_j||_F max(1, |mu|)^j of L(mu).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.ndimage
from skimage import measure

from .errors import DegreeError, DimensionError, InvalidWindow, NotAJointTuple
from .matpoly import DROP_RTOL, MatrixPolynomial, ScalarPoly, companion, evaluate
from .matrix_range import (
    BORDER_CODE,
    CODE_TO_STATUS,
    IN_CODE,
    OUT_CODE,
    MemberOptions,
    MemberResult,
    Status,
    member_zero,
    min_support,
)
from .numkit import Isometry, as_cmatrix, hermitian_part, random_isometry

_BATCH = 16384
# support-point iterations tried before the full search in montecarlo_region
_MC_CUTS = 8


def _check_k(L: MatrixPolynomial, k: int) -> None:
    if not 1 <= k <= L.n:
        raise DimensionError(f"need 1 <= k <= n, got k={k}, n={L.n}")


def _margins(L: MatrixPolynomial, mus: np.ndarray, opts: MemberOptions) -> np.ndarray:
    if opts.margin is not None:
        return np.full(mus.shape, float(opts.margin))
    return opts.rel_margin * np.asarray(L.scale_at(mus), dtype=float)


def member(L: MatrixPolynomial, k: int, mu: complex, opts: MemberOptions = MemberOptions()) -> MemberResult:
    """Ternary decision of mu in Lambda_k(L) with a witness angle for OUT."""
    _check_k(L, k)
    mu = complex(mu)
    margin = float(_margins(L, np.array([mu]), opts)[0])
    return member_zero(evaluate(L, mu), k, opts, margin=margin)


def member_codes(L: MatrixPolynomial, k: int, mus, opts: MemberOptions = MemberOptions()):
    """Batched :func:`member`: returns ``(codes, g_star, theta)`` arrays shaped like ``mus``."""
    _check_k(L, k)
    mus = np.asarray(mus, dtype=np.complex128)
    flat = mus.ravel()
    codes = np.empty(flat.size, dtype=np.uint8)
    g = np.empty(flat.size)
    th = np.empty(flat.size)
    margins = _margins(L, flat, opts)
    for s in range(0, flat.size, _BATCH):
        sl = slice(s, s + _BATCH)
        codes[sl], g[sl], th[sl] = min_support(evaluate(L, flat[sl]), k, margins[sl], opts)
    return codes.reshape(mus.shape), g.reshape(mus.shape), th.reshape(mus.shape)


@dataclass(frozen=True)
class Window:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        vals = (self.x_min, self.x_max, self.y_min, self.y_max)
        if not all(np.isfinite(vals)):
            raise InvalidWindow("window bounds must be finite")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidWindow(f"degenerate window {vals}")

    @property
    def corners(self) -> list[complex]:
        return [complex(x, y) for y in (self.y_min, self.y_max) for x in (self.x_min, self.x_max)]

    def cell_centers(self, nx: int, ny: int) -> tuple[np.ndarray, np.ndarray]:
        _check_res(nx, ny)
        tx = (2 * np.arange(nx) + 1) / (2 * nx)
        ty = (2 * np.arange(ny) + 1) / (2 * ny)
        return self.x_min * (1 - tx) + self.x_max * tx, self.y_min * (1 - ty) + self.y_max * ty


def _check_res(nx: int, ny: int) -> None:
    if int(nx) < 2 or int(ny) < 2:
        raise InvalidWindow(f"resolution must be at least 2x2, got {nx}x{ny}")


@dataclass(frozen=True)
class RegionGrid:
    """Ternary raster; ``codes[j, i]`` is the cell with the i-th x and j-th y center (y ascending)."""

    window: Window
    nx: int
    ny: int
    codes: np.ndarray = field(repr=False)
    k: int
    meta: dict = field(default_factory=dict, repr=False)

    @property
    def xs(self) -> np.ndarray:
        return self.window.cell_centers(self.nx, self.ny)[0]

    @property
    def ys(self) -> np.ndarray:
        return self.window.cell_centers(self.nx, self.ny)[1]

    @property
    def centers(self) -> np.ndarray:
        xs, ys = self.window.cell_centers(self.nx, self.ny)
        return xs[None, :] + 1j * ys[:, None]

    @property
    def cells(self) -> list[Status]:
        """Statuses in row-major order."""
        return [CODE_TO_STATUS[int(c)] for c in self.codes.ravel()]

    @property
    def cell_size(self) -> tuple[float, float]:
        w = self.window
        return (w.x_max - w.x_min) / self.nx, (w.y_max - w.y_min) / self.ny

    def count(self, status: Status) -> int:
        code = {Status.OUT: OUT_CODE, Status.BORDER: BORDER_CODE, Status.IN: IN_CODE}[Status(status)]
        return int(np.count_nonzero(self.codes == code))

    def cell_of(self, z: complex) -> tuple[int, int] | None:
        """(row, column) of the cell containing z, or None outside the window."""
        w = self.window
        dx, dy = self.cell_size
        i = int(np.floor((z.real - w.x_min) / dx))
        j = int(np.floor((z.imag - w.y_min) / dy))
        if z.real == w.x_max:
            i = self.nx - 1
        if z.imag == w.y_max:
            j = self.ny - 1
        if 0 <= i < self.nx and 0 <= j < self.ny:
            return j, i
        return None


def grid_scan(L: MatrixPolynomial, k: int, window: Window, nx: int, ny: int, opts: MemberOptions = MemberOptions()) -> RegionGrid:
    """member at every cell center."""
    mus = _centers(window, nx, ny)
    codes, _, _ = member_codes(L, k, mus, opts)
    return RegionGrid(window, int(nx), int(ny), codes, k, {"method": "grid", "options": opts})


def _centers(window: Window, nx: int, ny: int) -> np.ndarray:
    xs, ys = window.cell_centers(nx, ny)
    return xs[None, :] + 1j * ys[:, None]


@dataclass(frozen=True)
class LineScan:
    points: np.ndarray
    codes: np.ndarray
    g_star: np.ndarray
    theta: np.ndarray

    @property
    def statuses(self) -> list[Status]:
        return [CODE_TO_STATUS[int(c)] for c in self.codes]


def line_scan(
    L: MatrixPolynomial, k: int, z_start: complex, z_end: complex, samples: int, opts: MemberOptions = MemberOptions()
) -> LineScan:
    """member at ``samples`` equally spaced points of the segment, endpoints included."""
    if int(samples) < 2:
        raise ValueError("samples must be at least 2")
    t = np.linspace(0.0, 1.0, int(samples))
    pts = complex(z_start) * (1 - t) + complex(z_end) * t
    codes, g, th = member_codes(L, k, pts, opts)
    return LineScan(pts, codes, g, th)


def fuse_line_scan(grid: RegionGrid, line: LineScan) -> RegionGrid:
    """Raise every cell hit by a non-OUT line sample to that sample's status."""
    codes = grid.codes.copy()
    for z, c in zip(line.points.tolist(), line.codes.tolist()):
        if c == OUT_CODE:
            continue
        cell = grid.cell_of(z)
        if cell is not None:
            codes[cell] = max(codes[cell], c)
    meta = dict(grid.meta, fused_line=(complex(line.points[0]), complex(line.points[-1]), line.points.size))
    return replace(grid, codes=codes, meta=meta)


@dataclass(frozen=True)
class ComponentLabels:
    labels: np.ndarray
    count: int


def components(grid: RegionGrid) -> ComponentLabels:
    """8-connected components of the non-OUT cells."""
    labels, count = scipy.ndimage.label(grid.codes != OUT_CODE, structure=np.ones((3, 3), dtype=int))
    return ComponentLabels(labels, int(count))


@dataclass(frozen=True)
class Boundedness:
    """``bounded`` is a proof when True; False only means the test was inconclusive."""

    bounded: bool
    theta: float | None = None
    gamma: float | None = None
    radius: float | None = None
    formula: str = ""

    @property
    def status(self) -> str:
        return "Bounded" if self.bounded else "Unknown"


def boundedness_check(L: MatrixPolynomial, k: int, opts: MemberOptions = MemberOptions()) -> Boundedness:
    """Sufficient test: 0 outside Lambda_k(A_m) bounds Lambda_k(L).

    With H = Re(e^{i theta} A_m) and lambda_k(H) = -gamma < 0, every k-dim
    subspace holds a unit x with |x* A_m x| >= gamma, and x* L(mu) x = 0 for x
    in an isotropic subspace. Cauchy's bound on that scalar polynomial gives
    |mu| <= 1 + max_{j<m} ||A_j||_2 / gamma.
    """
    _check_k(L, k)
    res = member_zero(L.leading, k, opts)
    if res.status is not Status.OUT:
        return Boundedness(False)
    gamma = -res.g_star
    low = max((float(np.linalg.norm(a, 2)) for a in L.coeffs[:-1]), default=0.0)
    return Boundedness(True, res.theta, gamma, 1.0 + low / gamma, "1 + max_{j<m} ||A_j||_2 / gamma")


def montecarlo_region(
    L: MatrixPolynomial,
    k: int,
    n_samples: int,
    window: Window,
    nx: int,
    ny: int,
    seed: int = 0,
    opts: MemberOptions = MemberOptions(),
) -> RegionGrid:
    """Intersection of the numerical ranges of random (n-k+1)-dim compressions.

    Sample ``s`` uses ``random_isometry(n, n-k+1, seed, s)``. A cell becomes
    OUT only with a separating angle for 0 and F(M* L(mu) M), so the result
    always contains the cells that :func:`grid_scan` marks IN or BORDER
    under the same options.
    """
    _check_k(L, k)
    if int(n_samples) < 1:
        raise ValueError("n_samples must be at least 1")
    mus = _centers(window, nx, ny).ravel()
    margins = _margins(L, mus, opts)
    d = L.n - k + 1
    probes = _probe_vectors(d)
    alive = np.arange(mus.size)
    for s in range(int(n_samples)):
        if alive.size == 0:
            break
        M = random_isometry(L.n, d, seed, s).matrix
        Mh = np.conj(M.T)
        comp = MatrixPolynomial([Mh @ a @ M for a in L.coeffs])
        out = np.zeros(alive.size, dtype=bool)
        for b0 in range(0, alive.size, _BATCH):
            idx = alive[b0 : b0 + _BATCH]
            out[b0 : b0 + _BATCH] = _separated(evaluate(comp, mus[idx]), margins[idx], probes, opts)
        alive = alive[~out]
    codes = np.full(mus.size, OUT_CODE, dtype=np.uint8)
    codes[alive] = IN_CODE
    meta = {"method": "montecarlo", "samples": int(n_samples), "seed": int(seed), "options": opts}
    return RegionGrid(window, int(nx), int(ny), codes.reshape(int(ny), int(nx)), k, meta)


def _probe_vectors(d: int) -> np.ndarray:
    """Unit vectors e_i and (e_i + c e_j)/sqrt(2), c in {1, -1, i, -i}, as columns."""
    cols = [np.eye(d)[:, i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            for c in (1, -1, 1j, -1j):
                v = np.zeros(d, dtype=np.complex128)
                v[i], v[j] = 1, c
                cols.append(v / np.sqrt(2))
    return np.array(cols, dtype=np.complex128).T


def _largest_gap(points: np.ndarray):
    """Per row: (0 inside the hull of the points, bisector angle of the widest angular gap)."""
    ang = np.sort(np.angle(points), axis=1)
    gaps = np.diff(np.concatenate([ang, ang[:, :1] + 2 * np.pi], axis=1), axis=1)
    j = np.argmax(gaps, axis=1)
    widest = gaps[np.arange(ang.shape[0]), j]
    return widest < np.pi, ang[np.arange(ang.shape[0]), j] + 0.5 * widest


def _separated(B: np.ndarray, margins: np.ndarray, probes: np.ndarray, opts: MemberOptions) -> np.ndarray:
    """True where some angle certifies 0 outside F(B) by more than the margin.

    Points x* B x of F(B) whose hull surrounds 0 rule separation out cheaply;
    otherwise the widest gap suggests a direction, whose top eigenvector adds
    a new boundary point. Undecided matrices get the full angular search.
    """
    N = B.shape[0]
    pts = np.einsum("dp,nde,ep->np", np.conj(probes), B, probes)
    out = np.zeros(N, dtype=bool)
    rest = np.arange(N)
    for _ in range(_MC_CUTS):
        inside, beta = _largest_gap(pts[rest])
        rest = rest[~inside]
        if rest.size == 0:
            return out
        theta = -beta[~inside]
        H = hermitian_part(np.exp(1j * theta)[:, None, None] * B[rest])
        w, v = np.linalg.eigh(H)
        sep = w[:, -1] < -margins[rest]
        out[rest[sep]] = True
        rest = rest[~sep]
        x = v[~sep, :, -1]
        new = np.einsum("nd,nde,ne->n", np.conj(x), B[rest], x)
        # undecided rows take the new point; decided rows are never read again
        pts = np.concatenate([pts, pts[:, :1]], axis=1)
        pts[rest, -1] = new
    if rest.size:
        codes, _, _ = min_support(B[rest], 1, margins[rest], opts)
        out[rest[codes == OUT_CODE]] = True
    return out


@dataclass(frozen=True)
class BoundarySample:
    """Ordered polylines on the interface between non-OUT and OUT cells.

    Closed polylines run counterclockwise around the non-OUT cells. ``clipped``
    is set when non-OUT cells touch the window edge, where no boundary is traced.
    """

    polylines: list[np.ndarray]
    closed: list[bool]
    clipped: bool

    @property
    def points(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros(0, dtype=np.complex128)
        return np.concatenate(self.polylines)

    def is_empty(self) -> bool:
        return not self.polylines


def boundary_trace(grid: RegionGrid) -> BoundarySample:
    """Marching squares at level 1/2 of the non-OUT indicator, in window coordinates."""
    mask = (grid.codes != OUT_CODE).astype(float)
    clipped = bool(mask[0].any() or mask[-1].any() or mask[:, 0].any() or mask[:, -1].any())
    xs, ys = grid.xs, grid.ys
    lines, closed = [], []
    for c in measure.find_contours(mask, 0.5, fully_connected="high"):
        z = np.interp(c[:, 1], np.arange(grid.nx), xs) + 1j * np.interp(c[:, 0], np.arange(grid.ny), ys)
        is_closed = bool(len(z) > 2 and z[0] == z[-1])
        if is_closed:
            z = z[:-1]
            if _signed_area(z) < 0:
                z = z[::-1]
        lines.append(z)
        closed.append(is_closed)
    return BoundarySample(lines, closed, clipped)


def _signed_area(z: np.ndarray) -> float:
    w = np.roll(z, -1)
    return 0.5 * float(np.sum(z.real * w.imag - w.real * z.imag))


@dataclass(frozen=True)
class SharpPoint:
    point: complex
    turning_angle: float


def sharp_points_poly(boundary: BoundarySample, window_len: int = 4, angle_threshold: float = 0.6) -> list[SharpPoint]:
    """Heuristic corner detector on traced boundary polylines.

    The turning angle at vertex i is the angle between the chords
    p[i] - p[i-w] and p[i+w] - p[i] with w = ``window_len``. Vertices turning
    towards the inside (left of a counterclockwise boundary) by at least
    ``angle_threshold`` are candidates; the strongest vertex of each run of
    candidates is reported, keeping only the strongest peak within w vertices.
    """
    if boundary.is_empty():
        raise ValueError("boundary is empty")
    w = int(window_len)
    if w < 1:
        raise ValueError("window_len must be positive")
    found: list[SharpPoint] = []
    for z, closed in zip(boundary.polylines, boundary.closed):
        n = z.size
        if n < 2 * w + 1:
            continue
        if closed:
            idx = np.arange(n)
            back, fwd = z - np.roll(z, w), np.roll(z, -w) - z
        else:
            idx = np.arange(w, n - w)
            back, fwd = z[w:-w] - z[:-2 * w], z[2 * w:] - z[w:-w]
        with np.errstate(invalid="ignore", divide="ignore"):
            turn = np.angle(fwd / back)
        turn = np.nan_to_num(turn)
        peaks = [run[np.argmax(turn[run])] for run in _runs(turn >= angle_threshold, closed)]
        # one report per corner: weaker peaks within w vertices of a stronger one are dropped
        kept: list[int] = []
        for p in sorted(peaks, key=lambda i: -turn[i]):
            dist = [abs(int(idx[p]) - int(idx[q])) for q in kept]
            if closed:
                dist = [min(d, n - d) for d in dist]
            if all(d > w for d in dist):
                kept.append(p)
        found.extend(SharpPoint(complex(z[idx[p]]), float(turn[p])) for p in sorted(kept))
    return found


def _runs(mask: np.ndarray, cyclic: bool) -> list[np.ndarray]:
    """Index arrays of maximal runs of True (wrapping around when ``cyclic``)."""
    n = mask.size
    if not mask.any():
        return []
    if mask.all():
        return [np.arange(n)]
    start = 0
    if cyclic:
        start = int(np.flatnonzero(~mask)[0])
    order = (np.arange(n) + start) % n
    runs, cur = [], []
    for i in order.tolist():
        if mask[i]:
            cur.append(i)
        elif cur:
            runs.append(np.array(cur))
            cur = []
    if cur:
        runs.append(np.array(cur))
    return runs


@dataclass(frozen=True)
class InclusionRow:
    point: complex
    status_L: Status
    status_C: Status | None
    passed: bool


@dataclass(frozen=True)
class InclusionReport:
    rows: list[InclusionRow]
    origin_status: Status | None  # None when the origin check does not apply (m = 1)
    origin_passed: bool

    @property
    def passed(self) -> bool:
        return self.origin_passed and all(r.passed for r in self.rows)


def companion_inclusion_check(
    L: MatrixPolynomial, k: int, test_points, opts: MemberOptions = MemberOptions()
) -> InclusionReport:
    """Check Lambda_k(L) plus the origin against Lambda_k of the companion pencil.

    Points IN for L must be IN or BORDER for C_L; BORDER points are tested
    but cannot fail. For m >= 2 the first block
    coordinate space is isotropic for C_L(0), so 0 must be a member as well;
    for m = 1 the pencil is L itself and the origin check is skipped.
    """
    if L.m < 1:
        raise DegreeError("companion inclusion needs degree >= 1")
    _check_k(L, k)
    C = companion(L).as_polynomial()
    rows = []
    for z in np.asarray(test_points, dtype=np.complex128).ravel().tolist():
        sL = member(L, k, z, opts).status
        sC = member(C, k, z, opts).status if sL is not Status.OUT else None
        rows.append(InclusionRow(z, sL, sC, sL is not Status.IN or sC is not Status.OUT))
    if L.m == 1:
        return InclusionReport(rows, None, True)
    s0 = member(C, k, 0.0, opts).status
    return InclusionReport(rows, s0, s0 is not Status.OUT)


@dataclass(frozen=True)
class JointTuple:
    mu: np.ndarray  # mu_0..mu_m with Q* A_j Q ~ mu_j I
    defect: float
    roots: np.ndarray
    statuses: list[Status]
    all_of_c: bool


def verify_joint_tuple(
    L: MatrixPolynomial, Q, tol: float = 1e-8, opts: MemberOptions = MemberOptions()
) -> JointTuple:
    """Roots of sum_j mu_j lam^j when every Q* A_j Q equals mu_j I_k.

    Raises :class:`NotAJointTuple` when max_j ||Q* A_j Q - mu_j I||_F > tol.
    A vanishing tuple means Q spans a totally isotropic subspace, so every
    complex number is a member (``all_of_c``).
    """
    q = Q.matrix if isinstance(Q, Isometry) else as_cmatrix(Q, "Q")
    if q.shape[0] != L.n:
        raise DimensionError(f"isometry has {q.shape[0]} rows, polynomial has size {L.n}")
    k = q.shape[1]
    qh = np.conj(q.T)
    comps = [qh @ a @ q for a in L.coeffs]
    mu = np.array([np.trace(c) / k for c in comps])
    defect = max(float(np.linalg.norm(c - m * np.eye(k))) for c, m in zip(comps, mu))
    if defect > tol:
        raise NotAJointTuple(defect)
    p = ScalarPoly(mu, atol=DROP_RTOL * max(float(np.max(L.coefficient_norms())), 1e-300))
    if p.is_zero():
        return JointTuple(mu, defect, np.zeros(0, dtype=np.complex128), [], True)
    roots = p.roots()
    statuses = [member(L, k, r, opts).status for r in roots.tolist()]
    return JointTuple(mu, defect, roots, statuses, False)
