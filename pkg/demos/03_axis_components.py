"""A quadratic whose rank-2 range on the imaginary axis splits into three pieces."""

import numpy as np
from _data import axis_quadratic

from hrnr import Window, common_roots, components, grid_scan, line_scan
from hrnr.poly_range import fuse_line_scan

L = axis_quadratic()
line = line_scan(L, 2, -4j, 4j, 161)
hit = line.points[line.codes != 0].imag
print("members on the axis: |y| >= 2:", np.all(np.abs(hit[np.abs(hit) > 0.05]) >= 2), "and y = 0:", 0.0 in hit)

grid = grid_scan(L, 2, Window(-1, 1, -4.5, 4.5), 21, 91)
labels = components(fuse_line_scan(grid, line))
print("connected components:", labels.count)

# The first two coordinate vectors compress L to a scalar multiple of the identity.
Q = np.eye(4)[:, :2]
print("common roots for Q = [e1 e2]:", np.round(common_roots(L, 2, Q).roots, 12))
