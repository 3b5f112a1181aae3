"""Planar convex geometry on complex-number point sets."""

from __future__ import annotations

from collections import deque

import numpy as np

# direction cross product below which two support lines count as parallel
_PARALLEL = 1e-9


def cross(o: complex, a: complex, b: complex) -> float:
    """z-component of (a - o) x (b - o)."""
    u, v = a - o, b - o
    return u.real * v.imag - u.imag * v.real


def convex_hull(points, tol: float = 0.0) -> np.ndarray:
    """Counterclockwise hull vertices (Andrew's monotone chain).

    Points closer than ``tol`` to an already-kept neighbour and turns with
    cross product ``<= tol * |edge|`` are dropped, so the output is strictly
    convex at that resolution.
    """
    pts = np.unique(np.asarray(points, dtype=np.complex128).ravel())
    if pts.size <= 1:
        return pts
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order].tolist()

    def chain(seq):
        out: list[complex] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= tol * abs(p - out[-2]):
                out.pop()
            if out and abs(p - out[-1]) <= tol:
                continue
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) >= 2 and abs(hull[0] - hull[-1]) <= tol:
        hull.pop()
    if not hull:
        hull = [pts[0]]
    return np.array(hull, dtype=np.complex128)


def _calipers(vertices) -> tuple[float, complex, complex]:
    h = convex_hull(vertices)
    n = h.size
    if n == 0:
        return 0.0, 0j, 0j
    pts = h.tolist()
    if n <= 2:
        return abs(pts[-1] - pts[0]), pts[0], pts[-1]
    best, p, q = 0.0, pts[0], pts[0]
    j = 1
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        while abs(cross(a, b, pts[(j + 1) % n])) > abs(cross(a, b, pts[j])):
            j = (j + 1) % n
        for s in (a, b):
            d = abs(pts[j] - s)
            if d > best:
                best, p, q = d, s, pts[j]
    return best, p, q


def diameter(vertices) -> float:
    """Largest pairwise distance, by rotating calipers on the hull."""
    return float(_calipers(vertices)[0])


def farthest_pair(vertices) -> tuple[complex, complex]:
    _, p, q = _calipers(vertices)
    return complex(p), complex(q)


def min_width(vertices) -> float:
    """Minimum width of the convex hull of ``vertices`` (0 for fewer than 3 hull points)."""
    h = convex_hull(vertices)
    n = h.size
    if n < 3:
        return 0.0
    pts = h.tolist()
    best = np.inf
    j = 1
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        while abs(cross(a, b, pts[(j + 1) % n])) > abs(cross(a, b, pts[j])):
            j = (j + 1) % n
        best = min(best, abs(cross(a, b, pts[j])) / abs(b - a))
    return float(best)


def point_segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(p - a)
    t = ((p - a) * np.conj(d)).real / L2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def distance_to_convex(p: complex, vertices) -> float:
    """Distance from ``p`` to the filled convex polygon with CCW ``vertices``."""
    v = np.asarray(vertices, dtype=np.complex128)
    if v.size == 0:
        return np.inf
    if v.size == 1:
        return abs(p - v[0])
    if v.size >= 3 and all(cross(v[i], v[(i + 1) % v.size], p) >= 0 for i in range(v.size)):
        return 0.0
    edges = range(v.size) if v.size >= 3 else range(1)
    return min(point_segment_distance(p, v[i], v[(i + 1) % v.size]) for i in edges)


def hausdorff_convex(P, Q) -> float:
    """Hausdorff distance between two filled convex polygons.

    The distance to a convex set is a convex function, so its maximum over a
    polygon is attained at a vertex; checking vertices both ways is exact.
    """
    P = np.asarray(P, dtype=np.complex128)
    Q = np.asarray(Q, dtype=np.complex128)
    if P.size == 0 or Q.size == 0:
        return 0.0 if P.size == Q.size else np.inf
    d1 = max(distance_to_convex(p, Q) for p in P)
    d2 = max(distance_to_convex(q, P) for q in Q)
    return float(max(d1, d2))


def polygon_area(vertices) -> float:
    v = np.asarray(vertices, dtype=np.complex128)
    if v.size < 3:
        return 0.0
    w = np.roll(v, -1)
    return 0.5 * float(np.sum(v.real * w.imag - w.real * v.imag))


def exterior_angles(vertices) -> np.ndarray:
    """Turning angle at each vertex of a CCW polygon (sums to 2*pi when convex)."""
    v = np.asarray(vertices, dtype=np.complex128)
    e_in = v - np.roll(v, 1)
    e_out = np.roll(v, -1) - v
    return np.angle(e_out / e_in)


def halfplane_intersection(thetas, offsets, eps: float = 0.0):
    """Intersect the half-planes Re(e^{i theta_j} z) <= offsets[j].

    The normals must surround the origin (consecutive gaps below pi) so the
    result is bounded. Returns ``(vertices, active)``: CCW vertices and the
    indices of the non-redundant half-planes, vertex ``i`` lying on
    ``active[i]`` and ``active[i + 1]``. Both are empty when the
    intersection has no interior at resolution ``eps``.
    """
    thetas = np.asarray(thetas, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    normals = np.exp(-1j * thetas)
    dirs = 1j * normals
    order = np.argsort(np.angle(dirs), kind="stable")
    n_ = normals.tolist()
    d_ = dirs.tolist()
    h_ = offsets.tolist()

    def meet(i, j):
        p0 = h_[i] * n_[i]
        nj = n_[j]
        den = (nj.conjugate() * d_[i]).real
        t = (h_[j] - (nj.conjugate() * p0).real) / den
        return p0 + t * d_[i]

    def outside(p, j):
        return (n_[j].conjugate() * p).real > h_[j] + eps

    dq: deque[int] = deque()
    for j in order.tolist():
        while len(dq) >= 2 and outside(meet(dq[-2], dq[-1]), j):
            dq.pop()
        while len(dq) >= 2 and outside(meet(dq[0], dq[1]), j):
            dq.popleft()
        if dq:
            c = (d_[dq[-1]].conjugate() * d_[j]).imag
            if abs(c) <= _PARALLEL and (d_[dq[-1]].conjugate() * d_[j]).real > 0:
                if h_[j] < h_[dq[-1]]:
                    dq[-1] = j
                continue
        dq.append(j)
    while len(dq) >= 3 and outside(meet(dq[-2], dq[-1]), dq[0]):
        dq.pop()
    while len(dq) >= 3 and outside(meet(dq[0], dq[1]), dq[-1]):
        dq.popleft()
    while len(dq) >= 3:
        i, j = dq[-1], dq[0]
        prod = d_[i].conjugate() * d_[j]
        if abs(prod.imag) > _PARALLEL or prod.real <= 0:
            break
        if h_[i] < h_[j]:
            dq.popleft()
        else:
            dq.pop()
    if len(dq) < 3:
        return np.zeros(0, dtype=np.complex128), np.zeros(0, dtype=np.intp)
    active = list(dq)
    verts = [meet(active[i], active[(i + 1) % len(active)]) for i in range(len(active))]
    return np.array(verts, dtype=np.complex128), np.array(active, dtype=np.intp)
