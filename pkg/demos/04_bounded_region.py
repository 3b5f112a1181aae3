"""Boundedness certificate, a raster of the range, and Monte-Carlo inner estimates."""

from _data import bounded_quadratic, cubic5

from hrnr import Status, Window, boundedness_check, grid_scan, montecarlo_region

L = bounded_quadratic()
cert = boundedness_check(L, 2)
print(f"{cert.status}: the range lies in |z| <= {cert.radius:.3f}")
grid = grid_scan(L, 2, Window(-6, 2, -4, 4), 64, 64)
print("IN cells:", grid.count(Status.IN), "BORDER cells:", grid.count(Status.BORDER))
for row in grid.codes[::-4]:
    print("".join(" .#"[c] for c in row[::2]))

# Monte-Carlo intersects ranges of random compressions, an outer estimate that contains the grid IN cells.
C = cubic5()
window = Window(-2, 2, -2, 2)
exact = grid_scan(C, 2, window, 60, 60)
mc = montecarlo_region(C, 2, 200, window, 60, 60, seed=1)
inside = exact.codes == 2
print("grid IN cells:", int(inside.sum()), "Monte-Carlo IN cells:", int((mc.codes == 2).sum()))
print("grid IN contained in Monte-Carlo IN:", bool((mc.codes[inside] == 2).all()))
