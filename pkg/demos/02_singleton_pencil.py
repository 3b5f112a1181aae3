"""A pencil whose rank-2 range is the single point 0, and the resultant test behind it."""

import numpy as np
from _data import singleton_pencil

from hrnr import build_sylvester, common_roots, member
from hrnr.matpoly import scalar_entries

L = singleton_pencil()
print("member(0):", member(L, 2, 0).status)
print("member(0.1):", member(L, 2, 0.1).status)

# Full rank means this Q has no common root, so it does not witness the point 0.
s, r = 1 / np.sqrt(3), np.sqrt(6) / 4
Q = np.array([[0, s], [-r, s], [r, s], [0.5, 0]], dtype=complex)
rec = build_sylvester(scalar_entries(L, Q))
print(f"resultant matrix ({rec.matrix.shape[0]}x{rec.matrix.shape[1]}), rank {rec.rank}, gcd degree {rec.delta}")
print(np.round(rec.matrix.real, 6))
print("common roots for this Q:", common_roots(L, 2, Q).roots)
