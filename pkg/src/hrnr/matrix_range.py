"""Higher rank numerical range of a constant matrix.

Everything rests on the support function

    h(theta) = lambda_k(Re(e^{i theta} A)),    Re(M) = (M + M*)/2,

with lambda_k the k-th largest eigenvalue: Lambda_k(A) is the intersection of
the half-planes {z : Re(e^{i theta} z) <= h(theta)}. Hence 0 lies in
Lambda_k(A) iff min_theta h(theta) >= 0, and any angle with h < 0 is a
separation certificate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from . import geometry
from .errors import DimensionError
from .numkit import as_cmatrix, hermitian_eigenvalues, hermitian_part, skew_part

TWO_PI = 2.0 * np.pi
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
_CHUNK = 65536
_MIN_DTHETA = 1e-9
_GOLDEN_CELLS = 8


class Status(str, enum.Enum):
    IN = "IN"
    OUT = "OUT"
    BORDER = "BORDER"

    def __str__(self) -> str:
        return self.value


# compact codes used in rasters
OUT_CODE, BORDER_CODE, IN_CODE = 0, 1, 2
CODE_TO_STATUS = {OUT_CODE: Status.OUT, BORDER_CODE: Status.BORDER, IN_CODE: Status.IN}
STATUS_TO_CODE = {v: k for k, v in CODE_TO_STATUS.items()}


@dataclass(frozen=True)
class MemberOptions:
    """Knobs of the membership decision.

    ``margin`` is an absolute BORDER half-width; when ``None`` it is
    ``rel_margin`` times a size estimate of the tested matrix.
    """

    n_theta: int = 256
    refine_tol: float = 1e-10
    rel_margin: float = 1e-8
    margin: float | None = None
    # sampling cells are bisected down to this width before golden section
    min_cell: float = 1e-3


@dataclass(frozen=True)
class MemberResult:
    status: Status
    g_star: float  # min over theta of the support value (upper bound when not refined)
    theta: float  # angle attaining g_star; a separation witness when status is OUT
    margin: float

    @property
    def is_member(self) -> bool:
        return self.status is not Status.OUT


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise DimensionError(f"need 1 <= k <= n, got k={k}, n={n}")


def support_value(A, k: int, theta: float) -> float:
    """lambda_k(Re(e^{i theta} A)) via the Jacobi eigensolver."""
    a = as_cmatrix(A, "A")
    if a.shape[0] != a.shape[1]:
        raise DimensionError("A must be square")
    _check_k(a.shape[0], k)
    return float(hermitian_eigenvalues(hermitian_part(np.exp(1j * theta) * a))[k - 1])


class _SupportBatch:
    """Support values for a stack of matrices at arbitrary (index, angle) pairs."""

    def __init__(self, stack: np.ndarray, k: int):
        self.h0 = hermitian_part(stack)
        self.h1 = skew_part(stack)
        self.col = stack.shape[-1] - k  # ascending order index of lambda_k

    def at(self, idx: np.ndarray, theta) -> np.ndarray:
        theta = np.broadcast_to(np.asarray(theta, dtype=float), idx.shape)
        out = np.empty(idx.shape, dtype=float)
        for s in range(0, idx.size, _CHUNK):
            sl = slice(s, s + _CHUNK)
            c = np.cos(theta[sl])[:, None, None]
            si = np.sin(theta[sl])[:, None, None]
            h = c * self.h0[idx[sl]] - si * self.h1[idx[sl]]
            out[sl] = np.linalg.eigvalsh(h)[:, self.col]
        return out

    def grid(self, idx: np.ndarray, theta: float) -> np.ndarray:
        h = np.cos(theta) * self.h0[idx] - np.sin(theta) * self.h1[idx]
        return np.linalg.eigvalsh(h)[:, self.col]


def support_values(A, k: int, thetas) -> np.ndarray:
    """h(theta) for many angles at once (LAPACK eigensolver)."""
    a = as_cmatrix(A, "A")
    _check_k(a.shape[0], k)
    thetas = np.asarray(thetas, dtype=float)
    batch = _SupportBatch(a[None], k)
    return batch.at(np.zeros(thetas.size, dtype=np.intp), thetas.ravel()).reshape(thetas.shape)


def _golden_min(batch: _SupportBatch, owner: np.ndarray, a: np.ndarray, b: np.ndarray, tol: float):
    """Batched golden-section search for min h on [a, b]; returns (theta, value)."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = batch.at(owner, c)
    fd = batch.at(owner, d)
    while np.any(b - a > tol):
        left = fc < fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, b - _GOLDEN * (b - a), d)
        new_d = np.where(left, c, a + _GOLDEN * (b - a))
        fnew = batch.at(owner, np.where(left, new_c, new_d))
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = new_c, new_d
    return np.where(fc < fd, c, d), np.minimum(fc, fd)


def min_support(stack: np.ndarray, k: int, margins, opts: MemberOptions = MemberOptions()):
    """Batched sign decision for g* = min_theta h(theta) over a stack of matrices.

    Returns ``(codes, g_star, theta_star)`` arrays. A matrix is OUT as soon as
    any sampled angle gives h < -margin. Sampling cells whose Lipschitz lower
    bound can still cross the next decision threshold (+margin while the
    matrix looks IN, -margin once it is BORDER) are bisected down to
    ``opts.min_cell`` and finished by golden section.
    """
    stack = np.asarray(stack, dtype=np.complex128)
    N, n = stack.shape[0], stack.shape[-1]
    _check_k(n, k)
    n_theta = int(opts.n_theta)
    if n_theta < 3:
        raise ValueError("n_theta must be at least 3")
    margins = np.broadcast_to(np.asarray(margins, dtype=float), (N,))
    batch = _SupportBatch(stack, k)
    # Weyl: |h(s) - h(t)| <= |s - t| * sqrt(||H0||^2 + ||H1||^2)
    lip = np.hypot(np.linalg.norm(batch.h0, 2, axis=(-2, -1)), np.linalg.norm(batch.h1, 2, axis=(-2, -1)))
    dtheta = TWO_PI / n_theta
    thetas = np.arange(n_theta) * dtheta

    values = np.full((N, n_theta), np.inf)
    done = np.zeros(n_theta, dtype=bool)
    alive = np.arange(N)
    # nested angle subsets: matrices separated at a few angles drop out early
    for step in (n_theta // 64, n_theta // 16, n_theta // 4, 1):
        if step < 1 or alive.size == 0:
            continue
        todo = np.flatnonzero(~done & (np.arange(n_theta) % step == 0))
        for j in todo:
            values[alive, j] = batch.grid(alive, thetas[j])
        done[todo] = True
        alive = alive[np.min(values[alive], axis=1) >= -margins[alive]]

    jmin = np.argmin(values, axis=1)
    g = values[np.arange(N), jmin]
    th = thetas[jmin]
    if alive.size == 0:
        return _codes(g, margins), g, th

    v = values[alive]
    rows, cols = np.nonzero(np.ones_like(v, dtype=bool))
    owner = alive[rows]
    left = thetas[cols]
    fa = v[rows, cols]
    fb = v[rows, (cols + 1) % n_theta]
    width = dtheta
    while owner.size:
        # only a dip below the next decision threshold can change the verdict
        thr = np.where(g[owner] > margins[owner], margins[owner], -margins[owner])
        keep = 0.5 * (fa + fb) - lip[owner] * width / 2 < thr
        owner, left, fa, fb = owner[keep], left[keep], fa[keep], fb[keep]
        if owner.size == 0 or width <= opts.min_cell:
            break
        width *= 0.5
        mid = left + width
        fm = batch.at(owner, mid)
        _lower_min(g, th, owner, fm, mid)
        # a confirmed OUT needs no further search
        live = g[owner] >= -margins[owner]
        owner, left, fa, fb, mid, fm = owner[live], left[live], fa[live], fb[live], mid[live], fm[live]
        owner = np.concatenate([owner, owner])
        left = np.concatenate([left, mid])
        fa, fb = np.concatenate([fa, fm]), np.concatenate([fm, fb])
    if owner.size:
        # golden section in the few most promising cells of each matrix
        order = np.lexsort((np.minimum(fa, fb), owner))
        start = np.unique(owner[order], return_index=True)[1]
        rank = np.arange(order.size) - np.repeat(start, np.diff(np.append(start, order.size)))
        pick = order[rank < _GOLDEN_CELLS]
        owner, left = owner[pick], left[pick]
        t_best, f_best = _golden_min(batch, owner, left, left + width, opts.refine_tol)
        _lower_min(g, th, owner, f_best, t_best)
    return _codes(g, margins), g, th % TWO_PI


def _lower_min(g, th, owner, f, t) -> None:
    """g[o] = min(g[o], f) per owner (in place), tracking the angle."""
    order = np.lexsort((f, owner))
    first = order[np.unique(owner[order], return_index=True)[1]]
    o = owner[first]
    better = f[first] < g[o]
    g[o[better]] = f[first][better]
    th[o[better]] = t[first][better]


def _codes(g, margins) -> np.ndarray:
    codes = np.full(g.shape, BORDER_CODE, dtype=np.uint8)
    codes[g < -margins] = OUT_CODE
    codes[g > margins] = IN_CODE
    return codes


def default_margin(A: np.ndarray, opts: MemberOptions) -> float:
    if opts.margin is not None:
        return float(opts.margin)
    return opts.rel_margin * (1.0 + float(np.linalg.norm(A)))


def member_zero(A, k: int, opts: MemberOptions = MemberOptions(), margin: float | None = None) -> MemberResult:
    """Ternary decision of 0 in Lambda_k(A) with a witness angle."""
    a = as_cmatrix(A, "A")
    if a.shape[0] != a.shape[1]:
        raise DimensionError("A must be square")
    _check_k(a.shape[0], k)
    mg = default_margin(a, opts) if margin is None else float(margin)
    codes, g, th = min_support(a[None], k, np.array([mg]), opts)
    return MemberResult(CODE_TO_STATUS[int(codes[0])], float(g[0]), float(th[0]), mg)


def member_point(A, k: int, z: complex, opts: MemberOptions = MemberOptions()) -> MemberResult:
    """z in Lambda_k(A)  <=>  0 in Lambda_k(A - zI)."""
    a = as_cmatrix(A, "A")
    if a.shape[0] != a.shape[1]:
        raise DimensionError("A must be square")
    return member_zero(a - z * np.eye(a.shape[0]), k, opts)


@dataclass(frozen=True)
class SupportSample:
    theta: float
    value: float


class RegionStatus(str, enum.Enum):
    EMPTY = "Empty"
    POINT = "Point"
    SEGMENT = "Segment"
    POLYGON = "Polygon"
    UNBOUNDED = "Unbounded"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ConvexRegion:
    """Outer polygonal approximation of Lambda_k(A).

    ``thetas``/``support`` are the half-planes Re(e^{i theta} z) <= h that cut
    it out; for an Empty region ``certificate`` holds indices of three of them
    with empty intersection.
    """

    status: RegionStatus
    vertices: np.ndarray
    thetas: np.ndarray = field(repr=False)
    support: np.ndarray = field(repr=False)
    certificate: tuple[int, ...] | None = None

    @property
    def halfplanes(self) -> list[SupportSample]:
        return [SupportSample(float(t), float(v)) for t, v in zip(self.thetas, self.support)]

    def contains(self, z: complex, tol: float = 1e-9) -> bool:
        if self.status is RegionStatus.EMPTY:
            return False
        return bool(np.all((np.exp(1j * self.thetas) * z).real <= self.support + tol))


def _chebyshev_radius(thetas, h, scale):
    """max r such that a disc of radius r fits in every half-plane (LP)."""
    c = np.array([0.0, 0.0, -1.0])
    a_ub = np.column_stack([np.cos(thetas), -np.sin(thetas), np.ones_like(thetas)])
    res = linprog(c, A_ub=a_ub, b_ub=h / scale, bounds=[(None, None), (None, None), (None, 10.0)], method="highs-ds")
    if res.status != 0:
        raise RuntimeError(f"Chebyshev centre LP failed: {res.message}")
    duals = np.abs(res.ineqlin.marginals)
    center = complex(res.x[0], res.x[1]) * scale
    return res.x[2] * scale, center, duals


def _farkas_ok(thetas, h, idx) -> bool:
    """True when the three half-planes ``idx`` have empty intersection."""
    n = np.array([[np.cos(thetas[i]), -np.sin(thetas[i])] for i in idx])
    # nonnegative combination of normals summing to zero with negative offset sum
    _, _, vt = np.linalg.svd(n.T)
    lam = vt[-1]
    if np.all(lam <= 0):
        lam = -lam
    if np.any(lam < -1e-12):
        return False
    return float(lam @ h[idx]) < 0


def region_polygon(
    A,
    k: int,
    n_theta: int = 256,
    refine_tol: float | None = None,
    max_levels: int = 40,
) -> ConvexRegion:
    """Lambda_k(A) as an intersection of supporting half-planes.

    Starts from ``n_theta`` equally spaced normals and, while a vertex of the
    current polygon lies outside some half-plane by more than ``refine_tol``
    (default ``1e-9 (1 + ||A||_F)``), adds that half-plane. The result always
    contains the true set. ``refine_tol=0`` disables the refinement.
    """
    a = as_cmatrix(A, "A")
    if a.shape[0] != a.shape[1]:
        raise DimensionError("A must be square")
    n = a.shape[0]
    _check_k(n, k)
    if n_theta < 3:
        raise ValueError("n_theta must be at least 3")
    scale = 1.0 + float(np.linalg.norm(a))
    tol = 1e-9 * scale if refine_tol is None else float(refine_tol)

    thetas = np.arange(n_theta) * (TWO_PI / n_theta)
    h = support_values(a, k, thetas)

    mean = np.trace(a) / n
    if np.linalg.norm(a - mean * np.eye(n)) <= 1e-12 * np.linalg.norm(a):
        return ConvexRegion(RegionStatus.POINT, np.array([mean]), thetas, h)

    eps = 1e-14 * scale
    deg_tol = 1e-7 * scale
    levels = max_levels if tol > 0 else 0
    pad = 0.0
    verts = np.zeros(0, dtype=np.complex128)
    for attempt in range(2):
        r, center, duals = _chebyshev_radius(thetas, h, scale)
        if r < -deg_tol:
            cert = tuple(int(i) for i in np.sort(np.argsort(duals)[::-1][:3]))
            if not _farkas_ok(thetas, h, list(cert)):
                cert = None
            return ConvexRegion(RegionStatus.EMPTY, np.zeros(0, dtype=np.complex128), thetas, h, cert)
        # sets without interior (points, segments) are traced with slightly padded half-planes
        pad = deg_tol if (r < deg_tol or attempt) else 0.0
        thetas, h, verts = _refine(a, k, thetas, h, pad, tol, eps, levels)
        if verts.size:
            break
    if verts.size == 0:
        return ConvexRegion(RegionStatus.POINT, np.array([center]), thetas, h)

    hull = geometry.convex_hull(verts, tol=max(1e-10 * geometry.diameter(verts), 1e-13 * scale))
    if geometry.diameter(hull) <= 4 * deg_tol:
        return ConvexRegion(RegionStatus.POINT, np.array([np.mean(hull)]), thetas, h)
    if pad > 0 or geometry.min_width(hull) <= deg_tol:
        p, q = geometry.farthest_pair(hull)
        seg = np.array([p, q]) if (p.real, p.imag) <= (q.real, q.imag) else np.array([q, p])
        return ConvexRegion(RegionStatus.SEGMENT, seg, thetas, h)
    return ConvexRegion(RegionStatus.POLYGON, hull, thetas, h)


def _vertex_cones(verts, act, thetas, same_tol):
    """Merge repeated polygon vertices; return (vertex, lo, hi) sample indices per distinct vertex.

    The distinct vertex sees the normals from ``thetas[lo]`` counterclockwise
    to ``thetas[hi]``.
    """
    V = verts.size
    same = np.abs(verts - np.roll(verts, -1)) <= same_tol
    ends = np.flatnonzero(~same)
    if ends.size == 0:
        return verts[:1], act[:1], act[:1]
    starts = (np.roll(ends, 1) + 1) % V
    return verts[ends], act[(ends + 1) % V], act[starts]


def _refine(a, k, thetas, h, pad, tol, eps, levels):
    """Cutting-plane refinement until no vertex violates a support line by more than ``tol``.

    A polygon vertex sees the normals between its two active lines (its
    cone). When no sample lies strictly inside the cone the deepest violation
    is located by golden section; otherwise h may have kinks between the
    redundant samples and the whole circle is searched.
    """
    verts, act = geometry.halfplane_intersection(thetas, h + pad, eps)
    search = MemberOptions(n_theta=64, refine_tol=1e-12, min_cell=1e-4)
    eye = np.eye(a.shape[0])
    verified: set[tuple[float, float]] = set()
    for _ in range(levels):
        if verts.size == 0:
            break
        N = thetas.size
        pts, lo, hi = _vertex_cones(verts, act, thetas, 1e3 * eps)
        gap = (hi - lo) % N
        width = (thetas[hi] - thetas[lo]) % TWO_PI
        keys = list(zip(thetas[lo].tolist(), thetas[hi].tolist()))
        todo = np.array([key not in verified for key in keys], dtype=bool)
        shifted = a[None] - pts[:, None, None] * eye
        cut = np.full(pts.size, np.nan)
        narrow = np.flatnonzero(todo & (gap == 1))
        if narrow.size:
            batch = _SupportBatch(shifted[narrow], k)
            left = thetas[lo[narrow]]
            t_best, g_best = _golden_min(batch, np.arange(narrow.size), left, left + width[narrow], 1e-3 * width[narrow])
            cut[narrow] = np.where(g_best + pad < -tol, t_best, np.nan)
        wide = np.flatnonzero(todo & (gap != 1))
        if wide.size:
            codes, g, th = min_support(shifted[wide], k, tol + pad, search)
            out = codes == OUT_CODE
            if np.any(out):
                # deepen the cut around the first violating angle found
                w = TWO_PI / search.n_theta
                batch = _SupportBatch(shifted[wide[out]], k)
                t2, g2 = _golden_min(batch, np.arange(int(out.sum())), th[out] - w, th[out] + w, 1e-12)
                th[out] = np.where(g2 < g[out], t2, th[out])
            cut[wide] = np.where(out, th, np.nan)
        verified.update(keys[i] for i in np.flatnonzero(todo & np.isnan(cut)))
        add = cut[~np.isnan(cut)] % TWO_PI
        # nearly parallel support lines make the intersection ill-conditioned
        pos = np.searchsorted(thetas, add) % N
        near = np.minimum(np.abs(add - thetas[pos]), np.abs(add - thetas[pos - 1]))
        near = np.minimum(near, TWO_PI - near)
        add = np.unique(add[near > _MIN_DTHETA])
        if add.size == 0:
            break
        thetas, first = np.unique(np.concatenate([thetas, add]), return_index=True)
        h = np.concatenate([h, support_values(a, k, add)])[first]
        verts, act = geometry.halfplane_intersection(thetas, h + pad, eps)
    return thetas, h, verts


@dataclass(frozen=True)
class SharpVertex:
    vertex: complex
    aperture: float


def sharp_vertices(region: ConvexRegion, aperture_min: float = 0.1) -> list[SharpVertex]:
    """Vertices whose exterior normal cone is at least ``aperture_min`` wide."""
    st = region.status
    if st is RegionStatus.EMPTY:
        return []
    if st is RegionStatus.UNBOUNDED:
        raise ValueError("sharp vertices need a bounded region")
    v = region.vertices
    if st is RegionStatus.POINT:
        return [SharpVertex(complex(v[0]), TWO_PI)] if TWO_PI >= aperture_min else []
    if st is RegionStatus.SEGMENT:
        return [SharpVertex(complex(p), np.pi) for p in v] if np.pi >= aperture_min else []
    ang = geometry.exterior_angles(v)
    return [SharpVertex(complex(p), float(t)) for p, t in zip(v, ang) if t >= aperture_min]
