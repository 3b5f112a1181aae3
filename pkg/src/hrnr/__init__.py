"""Higher rank numerical ranges of matrices and matrix polynomials.

Lambda_k(L) is the set of mu for which some rank-k orthogonal projection P
gives P L(mu) P = 0. Membership decisions are ternary (IN, OUT, BORDER).
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateAllZero,
    DegreeError,
    DimensionError,
    HRNRError,
    InvalidWindow,
    NotAJointTuple,
    NotAnIsometry,
    NumericError,
)
from .matpoly import MatrixPolynomial, ScalarPoly, companion, identity_pencil, pencil  # noqa: E402
from .matrix_range import MemberOptions, RegionStatus, Status, member_point, member_zero, region_polygon  # noqa: E402
from .numkit import Isometry, random_isometry  # noqa: E402
from .poly_range import (  # noqa: E402
    Window,
    boundary_trace,
    boundedness_check,
    companion_inclusion_check,
    components,
    grid_scan,
    line_scan,
    member,
    montecarlo_region,
    sharp_points_poly,
    verify_joint_tuple,
)
from .sylvester import build_sylvester, common_roots, nonemptiness_probe  # noqa: E402

__all__ = [
    "DegenerateAllZero",
    "DegreeError",
    "DimensionError",
    "HRNRError",
    "InvalidWindow",
    "Isometry",
    "MatrixPolynomial",
    "MemberOptions",
    "NotAJointTuple",
    "NotAnIsometry",
    "NumericError",
    "RegionStatus",
    "ScalarPoly",
    "Status",
    "Window",
    "boundary_trace",
    "boundedness_check",
    "build_sylvester",
    "common_roots",
    "companion",
    "companion_inclusion_check",
    "components",
    "grid_scan",
    "identity_pencil",
    "line_scan",
    "member",
    "member_point",
    "member_zero",
    "montecarlo_region",
    "nonemptiness_probe",
    "pencil",
    "random_isometry",
    "region_polygon",
    "sharp_points_poly",
    "verify_joint_tuple",
]
