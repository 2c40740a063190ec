"""Exception hierarchy for wdecomp."""


class WDecompError(Exception):
    """Base class for all errors raised by this package."""


class InvalidProfileError(WDecompError, ValueError):
    """Degree profile violates k >= 2 or some d_j < 3."""


class IndexRangeError(WDecompError, ValueError):
    """A multi-index or degree lies outside the admissible range."""


class ShiftOutOfBoundsError(IndexRangeError):
    pass


class DegreeMismatchError(WDecompError, ValueError):
    pass


class ProfileMismatchError(WDecompError, ValueError):
    pass


class ZeroFormError(WDecompError, ValueError):
    pass


class NotSquareFreeError(WDecompError, ValueError):
    pass


class SylvesterFailure(WDecompError, ArithmeticError):
    """No square-free apolar element was found, or the weights do not reconstruct the form."""


class InconsistentSystemError(WDecompError, ArithmeticError):
    """A subsystem that must be solvable turned out inconsistent (convention bug)."""


class VerificationError(WDecompError, ArithmeticError):
    """Reconstruction residual exceeds the requested tolerance."""

    def __init__(self, residual, tolerance):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(f"residual {residual:.3e} exceeds tolerance {tolerance:.3e}")


class MalformedFileError(WDecompError, ValueError):
    pass
