"""JSON documents for polynomials and isometries, and CSV/SVG/manifest writers.

Complex numbers are two-element arrays ``[re, im]``; each part may be a JSON
number or a hex-float string such as ``"0x1.8p+1"``. Output floats use the
shortest decimal that round-trips.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .errors import HRNRError
from .matpoly import MatrixPolynomial
from .matrix_range import CODE_TO_STATUS, OUT_CODE, BORDER_CODE, ConvexRegion, RegionStatus
from .poly_range import RegionGrid


class ParseError(HRNRError, ValueError):
    """Malformed input document; ``field`` names the offending entry."""

    def __init__(self, field: str, problem: str):
        self.field = field
        super().__init__(f"{field}: {problem}")


def _real(v, field: str) -> float:
    if isinstance(v, bool):
        raise ParseError(field, "expected a number")
    if isinstance(v, (int, float)):
        x = float(v)
    elif isinstance(v, str):
        try:
            x = float.fromhex(v)
        except ValueError:
            raise ParseError(field, f"not a hex-float string: {v!r}") from None
    else:
        raise ParseError(field, "expected a number or hex-float string")
    if not math.isfinite(x):
        raise ParseError(field, "non-finite value")
    return x


def _complex(v, field: str) -> complex:
    if not isinstance(v, list) or len(v) != 2:
        raise ParseError(field, "expected [re, im]")
    return complex(_real(v[0], field + "[0]"), _real(v[1], field + "[1]"))


def _int(doc: dict, key: str, minimum: int) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(key, "expected an integer")
    if v < minimum:
        raise ParseError(key, f"must be at least {minimum}")
    return v


def _matrix(rows, r: int, c: int, field: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != r:
        raise ParseError(field, f"expected {r} rows")
    out = np.empty((r, c), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != c:
            raise ParseError(f"{field}[{i}]", f"expected {c} entries")
        for j, v in enumerate(row):
            out[i, j] = _complex(v, f"{field}[{i}][{j}]")
    return out


def _load(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError("input", f"cannot read {path}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("input", f"invalid JSON at line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("input", "top level must be an object")
    return doc


def parse_polynomial(doc: dict) -> MatrixPolynomial:
    n = _int(doc, "n", 1)
    m = _int(doc, "m", 0)
    coeffs = doc.get("coefficients")
    if not isinstance(coeffs, list) or len(coeffs) != m + 1:
        raise ParseError("coefficients", f"expected m+1 = {m + 1} matrices")
    mats = [_matrix(c, n, n, f"coefficients[{j}]") for j, c in enumerate(coeffs)]
    if m > 0 and not np.any(mats[-1]):
        raise ParseError(f"coefficients[{m}]", "leading coefficient is zero")
    return MatrixPolynomial(mats)


def load_polynomial(path) -> MatrixPolynomial:
    return parse_polynomial(_load(path))


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def polynomial_doc(L: MatrixPolynomial) -> dict:
    return {
        "n": L.n,
        "m": L.m,
        "coefficients": [[[_pair(z) for z in row] for row in a.tolist()] for a in L.coeffs],
    }


def parse_isometry(doc: dict) -> np.ndarray:
    r = _int(doc, "rows", 1)
    c = _int(doc, "cols", 1)
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != r * c:
        raise ParseError("entries", f"expected rows*cols = {r * c} entries")
    flat = [_complex(v, f"entries[{i}]") for i, v in enumerate(entries)]
    return np.array(flat, dtype=np.complex128).reshape(r, c)


def load_isometry(path) -> np.ndarray:
    return parse_isometry(_load(path))


def isometry_doc(q: np.ndarray) -> dict:
    return {"rows": q.shape[0], "cols": q.shape[1], "entries": [_pair(z) for z in q.ravel().tolist()]}


def fmt(x: float) -> str:
    """Shortest round-trip decimal."""
    return repr(float(x))


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def grid_csv(grid: RegionGrid) -> str:
    xs = [fmt(x) for x in grid.xs]
    lines = ["x,y,status"]
    for j, y in enumerate(grid.ys):
        sy = fmt(y)
        lines.extend(f"{xs[i]},{sy},{CODE_TO_STATUS[int(c)]}" for i, c in enumerate(grid.codes[j]))
    return "\n".join(lines) + "\n"


def polygon_csv(region: ConvexRegion) -> str:
    if region.status is RegionStatus.EMPTY:
        return ""
    rows = [f"{fmt(z.real)},{fmt(z.imag)}" for z in region.vertices.tolist()]
    return "x,y\n" + "\n".join(rows) + "\n"


def points_csv(points, header: str = "x,y") -> str:
    rows = [f"{fmt(z.real)},{fmt(z.imag)}" for z in np.asarray(points, dtype=np.complex128).tolist()]
    return header + "\n" + "".join(r + "\n" for r in rows)


def grid_svg(grid: RegionGrid) -> str:
    """Filled cells: IN opaque, BORDER half-opaque; runs of equal cells share one rect."""
    w = grid.window
    width = 1000.0
    height = width * (w.y_max - w.y_min) / (w.x_max - w.x_min)
    cw, ch = width / grid.nx, height / grid.ny
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {fmt(width)} {fmt(height)}">',
        f"<desc>window x in [{fmt(w.x_min)}, {fmt(w.x_max)}], y in [{fmt(w.y_min)}, {fmt(w.y_max)}]; "
        f"user x = {fmt(width)}*(x - x_min)/(x_max - x_min), user y = {fmt(height)}*(y_max - y)/(y_max - y_min); "
        "opaque cells IN, half-opaque cells BORDER</desc>",
    ]
    for j in range(grid.ny):
        row = grid.codes[j]
        top = height - (j + 1) * ch
        i = 0
        while i < grid.nx:
            c = int(row[i])
            e = i
            while e + 1 < grid.nx and int(row[e + 1]) == c:
                e += 1
            if c != OUT_CODE:
                op = "0.5" if c == BORDER_CODE else "1"
                parts.append(
                    f'<rect x="{fmt(i * cw)}" y="{fmt(top)}" width="{fmt((e - i + 1) * cw)}" '
                    f'height="{fmt(ch)}" fill="black" fill-opacity="{op}"/>'
                )
            i = e + 1
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def manifest(command: str, options: dict, seed: int | None, wall_time: float) -> str:
    doc = {
        "command": command,
        "options": options,
        "seed": seed,
        "version": __version__,
        "wall_time": wall_time,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
