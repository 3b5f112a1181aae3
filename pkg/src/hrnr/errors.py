"""Exception types raised across the package."""


class HRNRError(Exception):
    """Base class for all package errors."""


class DimensionError(HRNRError, ValueError):
    """Shapes do not fit together (non-square input, k > n, ...)."""


class NumericError(HRNRError, ValueError):
    """Non-finite entries (NaN or Inf) in numeric input."""


class DegreeError(HRNRError, ValueError):
    """A polynomial has a degree the operation cannot handle."""


class NotAnIsometry(HRNRError, ValueError):
    """A matrix is too far from having orthonormal columns."""

    def __init__(self, defect, message=None):
        self.defect = float(defect)
        super().__init__(message or f"not an isometry: ||Q*Q - I||_F = {self.defect:.3e}")


class NotAJointTuple(HRNRError):
    """The compressions Q*A_jQ are not all scalar multiples of I_k."""

    def __init__(self, defect):
        self.defect = float(defect)
        super().__init__(f"compressions are not scalar: defect = {self.defect:.3e}")


class DegenerateAllZero(HRNRError):
    """Every compressed scalar polynomial vanishes identically."""


class InvalidWindow(HRNRError, ValueError):
    """A raster window is degenerate or a resolution is too small."""
