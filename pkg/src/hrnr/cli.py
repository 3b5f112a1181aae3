"""Command-line front end.

Exit codes: 0 IN / success, 1 OUT, 2 BORDER, 64 invalid input, 65 not an
isometry, 70 internal failure, 73 unwritable output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import io
from .errors import HRNRError, NotAnIsometry
from .matpoly import MatrixPolynomial, companion, scalar_entries
from .matrix_range import MemberOptions, RegionStatus, Status, region_polygon, sharp_vertices
from .numkit import Isometry
from .poly_range import (
    Window,
    boundary_trace,
    companion_inclusion_check,
    grid_scan,
    member,
    montecarlo_region,
    sharp_points_poly,
)
from .sylvester import build_sylvester, common_roots, nonemptiness_probe

EXIT_OUT, EXIT_BORDER = 1, 2
EXIT_USAGE, EXIT_ISOMETRY, EXIT_SOFTWARE, EXIT_CANTCREAT = 64, 65, 70, 73
STATUS_EXIT = {Status.IN: 0, Status.OUT: EXIT_OUT, Status.BORDER: EXIT_BORDER}


class UsageError(Exception):
    pass


class OutputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str, count: int, field: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != count:
        raise io.ParseError(field, f"expected {count} comma-separated numbers")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise io.ParseError(field, f"not a number list: {text!r}") from None
    if not all(np.isfinite(vals)):
        raise io.ParseError(field, "non-finite value")
    return vals


def _point(text: str, field: str = "--point") -> complex:
    re_, im = _floats(text, 2, field)
    return complex(re_, im)


def _window(text: str) -> Window:
    return Window(*_floats(text, 4, "--window"))


def _res(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise io.ParseError("--res", "expected NX,NY positive integers")
    nx, ny = int(parts[0]), int(parts[1])
    if nx < 2 or ny < 2:
        raise io.ParseError("--res", "resolution must be at least 2x2")
    return nx, ny


def _opts(args) -> MemberOptions:
    if args.ntheta < 3:
        raise io.ParseError("--ntheta", "must be at least 3")
    if args.margin is not None and not (np.isfinite(args.margin) and args.margin >= 0):
        raise io.ParseError("--margin", "must be a non-negative number")
    return MemberOptions(n_theta=args.ntheta, margin=args.margin)


def _k(args, L: MatrixPolynomial) -> int:
    if not 1 <= args.k <= L.n:
        raise io.ParseError("--k", f"must satisfy 1 <= k <= n = {L.n}")
    return args.k


def _write(path: str, text: str) -> None:
    try:
        io.write_text(path, text)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror}") from None


class _Run:
    """Collects output artifacts and writes a manifest next to each."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.t0 = time.perf_counter()

    def options(self) -> dict:
        return {k: v for k, v in sorted(vars(self.args).items()) if k != "func"}

    def emit(self, path: str | None, text: str) -> None:
        if path is None:
            return
        _write(path, text)
        wall = time.perf_counter() - self.t0
        opts = dict(self.options(), argv=self.argv)
        _write(path + ".manifest.json", io.manifest(self.args.command, opts, getattr(self.args, "seed", None), wall))


def cmd_member(args, run) -> int:
    L = io.load_polynomial(args.input)
    res = member(L, _k(args, L), _point(args.point), _opts(args))
    line = str(res.status)
    if res.status is Status.OUT:
        line += f" theta={io.fmt(res.theta)}"
    print(f"{line} g={io.fmt(res.g_star)} margin={io.fmt(res.margin)}")
    return STATUS_EXIT[res.status]


def _grid_outputs(run, args, grid) -> None:
    run.emit(args.out_csv, io.grid_csv(grid))
    run.emit(args.out_svg, io.grid_svg(grid))
    print(f"cells IN={grid.count(Status.IN)} BORDER={grid.count(Status.BORDER)} OUT={grid.count(Status.OUT)}")


def cmd_grid(args, run) -> int:
    L = io.load_polynomial(args.input)
    k = _k(args, L)
    window, (nx, ny), opts = _window(args.window), _res(args.res), _opts(args)
    _grid_outputs(run, args, grid_scan(L, k, window, nx, ny, opts))
    return 0


def cmd_montecarlo(args, run) -> int:
    L = io.load_polynomial(args.input)
    k = _k(args, L)
    if args.samples < 1:
        raise io.ParseError("--samples", "must be at least 1")
    window, (nx, ny), opts = _window(args.window), _res(args.res), _opts(args)
    _grid_outputs(run, args, montecarlo_region(L, k, args.samples, window, nx, ny, args.seed, opts))
    return 0


def _single_matrix(L: MatrixPolynomial) -> np.ndarray:
    """A from a constant document A or from the pencil I lam - A."""
    if L.m == 0:
        return L.coeffs[0]
    if L.m == 1 and np.array_equal(L.coeffs[1], np.eye(L.n)):
        return -L.coeffs[0]
    raise io.ParseError("coefficients", "expected a single matrix (m = 0) or a pencil I*lam - A")


def cmd_matrix_range(args, run) -> int:
    A = _single_matrix(io.load_polynomial(args.input))
    if not 1 <= args.k <= A.shape[0]:
        raise io.ParseError("--k", f"must satisfy 1 <= k <= n = {A.shape[0]}")
    if args.ntheta < 3:
        raise io.ParseError("--ntheta", "must be at least 3")
    region = region_polygon(A, args.k, args.ntheta)
    run.emit(args.out_csv, io.polygon_csv(region))
    print("EMPTY" if region.status is RegionStatus.EMPTY else f"{str(region.status).upper()} vertices={region.vertices.size}")
    return 0


def _load_q(path: str, n: int, k: int) -> np.ndarray:
    q = io.load_isometry(path)
    if q.shape != (n, k):
        raise io.ParseError("rows", f"isometry must be {n}x{k}, got {q.shape[0]}x{q.shape[1]}")
    return Isometry.from_matrix(q).matrix


def cmd_sylvester(args, run) -> int:
    L = io.load_polynomial(args.input)
    k = _k(args, L)
    q = _load_q(args.isometry, L.n, k)
    roots = common_roots(L, k, q, args.tol)
    if roots.all_of_c:
        print("all entries vanish: every complex number is a member")
        return 0
    rec = build_sylvester(scalar_entries(L, q))
    cmp_ = "<" if rec.verdict(L.m) else "not <"
    print(f"sigma={rec.sigma} tau={rec.tau} rank={rec.rank} delta={rec.delta}")
    print(f"verdict: rank {cmp_} 2m={2 * L.m}")
    for r in roots.roots.tolist():
        print(f"root {io.fmt(r.real)},{io.fmt(r.imag)}")
    if not roots.roots.size:
        print("no certified common roots")
    return 0


def cmd_sharp(args, run) -> int:
    L = io.load_polynomial(args.input)
    k = _k(args, L)
    if args.window is None:
        region = region_polygon(_single_matrix(L), k, args.ntheta)
        pts = [(v.vertex, v.aperture) for v in sharp_vertices(region, args.angle)]
        print(f"exact polygon: {region.status}")
    else:
        if args.res is None:
            raise io.ParseError("--res", "required with --window")
        grid = grid_scan(L, k, _window(args.window), *_res(args.res), _opts(args))
        boundary = boundary_trace(grid)
        if boundary.is_empty():
            print("no boundary inside the window")
            return 0
        pts = [(s.point, s.turning_angle) for s in sharp_points_poly(boundary, args.window_len, args.angle)]
        print("raster boundary (heuristic)" + (", clipped at window edge" if boundary.clipped else ""))
    for z, a in pts:
        print(f"sharp {io.fmt(z.real)},{io.fmt(z.imag)} angle={io.fmt(a)}")
    if args.out_csv:
        run.emit(args.out_csv, "x,y,angle\n" + "".join(f"{io.fmt(z.real)},{io.fmt(z.imag)},{io.fmt(a)}\n" for z, a in pts))
    return 0


def cmd_companion(args, run) -> int:
    L = io.load_polynomial(args.input)
    k = _k(args, L)
    if L.m < 1:
        raise io.ParseError("m", "companion linearization needs m >= 1")
    pts = [_point(p, "--points") for p in args.points.split(";")] if args.points else []
    C = companion(L).as_polynomial()
    pencil_json = json.dumps(io.polynomial_doc(C)) + "\n"
    if args.out_json:
        run.emit(args.out_json, pencil_json)
    else:
        sys.stdout.write(pencil_json)
    rep = companion_inclusion_check(L, k, pts, _opts(args))
    for r in rep.rows:
        sc = "-" if r.status_C is None else str(r.status_C)
        print(f"point {io.fmt(r.point.real)},{io.fmt(r.point.imag)} L={r.status_L} C={sc} {'PASS' if r.passed else 'FAIL'}")
    if rep.origin_status is None:
        print("origin: not applicable (m = 1, the pencil is L itself)")
    else:
        print(f"origin C={rep.origin_status} {'PASS' if rep.origin_passed else 'FAIL'}")
    print("inclusion PASS" if rep.passed else "inclusion FAIL")
    return 0


def cmd_probe(args, run) -> int:
    L = io.load_polynomial(args.input)
    k = _k(args, L)
    if args.samples < 1:
        raise io.ParseError("--samples", "must be at least 1")
    res = nonemptiness_probe(L, k, args.samples, args.seed, args.tol)
    if res.all_of_c:
        print("all of C: a sampled isometry spans a totally isotropic subspace")
        return 0
    if not res.hits:
        print("not found (inconclusive)")
    for h in res.hits:
        print(f"point {io.fmt(h.point.real)},{io.fmt(h.point.imag)} sample={h.sample}")
    if args.out_csv:
        run.emit(args.out_csv, io.points_csv(res.points))
    return 0


def _common(p, ntheta: bool = True) -> None:
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    if ntheta:
        p.add_argument("--ntheta", type=int, default=256)
        p.add_argument("--margin", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hrnr", description="Higher rank numerical ranges of matrix polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("member", help="decide whether a point lies in the range")
    _common(p)
    p.add_argument("--point", required=True, help="RE,IM")
    p.set_defaults(func=cmd_member)

    for name, func in (("grid", cmd_grid), ("montecarlo", cmd_montecarlo)):
        p = sub.add_parser(name, help=f"{name} raster of the range")
        _common(p)
        if name == "montecarlo":
            p.add_argument("--samples", type=int, required=True)
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--window", required=True, help="X0,X1,Y0,Y1")
        p.add_argument("--res", required=True, help="NX,NY")
        p.add_argument("--out-csv", required=True)
        p.add_argument("--out-svg")
        p.set_defaults(func=func)

    p = sub.add_parser("matrix-range", help="polygon of the range of a constant matrix")
    _common(p, ntheta=False)
    p.add_argument("--ntheta", type=int, default=256)
    p.add_argument("--out-csv", required=True)
    p.set_defaults(func=cmd_matrix_range)

    p = sub.add_parser("sylvester", help="resultant rank test for one isometry")
    _common(p, ntheta=False)
    p.add_argument("--isometry", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_sylvester)

    p = sub.add_parser("sharp", help="sharp boundary points")
    _common(p)
    p.add_argument("--window", help="X0,X1,Y0,Y1; without it the input must be a matrix or I*lam - A")
    p.add_argument("--res", help="NX,NY")
    p.add_argument("--window-len", type=int, default=4)
    p.add_argument("--angle", type=float, default=0.6)
    p.add_argument("--out-csv")
    p.set_defaults(func=cmd_sharp)

    p = sub.add_parser("companion", help="companion pencil and inclusion check")
    _common(p)
    p.add_argument("--points", help="RE,IM;RE,IM;...")
    p.add_argument("--out-json")
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("probe", help="random search for certified members")
    _common(p, ntheta=False)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out-csv")
    p.set_defaults(func=cmd_probe)
    return parser


# options whose values may start with a minus sign
_SIGNED = ("--point", "--points", "--window")


def _glue_signed(argv: list[str]) -> list[str]:
    """Turn ``--window -6,2,-4,4`` into ``--window=-6,2,-4,4`` so argparse keeps the value."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in _SIGNED and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_signed(argv))
        return args.func(args, _Run(args, argv))
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotAnIsometry as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ISOMETRY
    except OutputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CANTCREAT
    except (HRNRError, ValueError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # noqa: BLE001 - anything else is a bug, not an OUT verdict
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
