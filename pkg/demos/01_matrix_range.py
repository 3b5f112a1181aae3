"""Rank-k range of a normal 5x5 matrix: a polygon for k=2, empty for k=3."""

from _data import diagonal5

from hrnr import region_polygon
from hrnr.matrix_range import sharp_vertices

A = diagonal5()
for k in (1, 2, 3):
    region = region_polygon(A, k, 1024)
    print(f"k={k}: {region.status}, {region.vertices.size} vertices")
    for v in region.vertices:
        print(f"    {v.real:+.6f} {v.imag:+.6f}i")

# Eigenvalue -3 sits on the boundary of the k=2 polygon as a corner.
for s in sharp_vertices(region_polygon(A, 2, 1024)):
    print(f"sharp vertex {s.vertex:.6f}, aperture {s.aperture:.3f} rad")
