"""Exception and warning types raised by camat."""


class CamatError(Exception):
    """Base class for all camat errors."""


class ZeroDivisorError(CamatError, ArithmeticError):
    """A scalar has (numerically) zero Fourier coefficients.

    ``slices`` holds the offending 0-based slice indices.
    """

    def __init__(self, message, slices=()):
        super().__init__(message)
        self.slices = tuple(int(j) for j in slices)


class NonRealSpectrumError(CamatError, ValueError):
    """Ordering requested for a scalar whose Fourier coefficients are not real."""


class SymmetryViolationError(CamatError, ValueError):
    """Fourier data is too far from conjugate-symmetric to be projected."""


class SingularSliceError(CamatError, ArithmeticError):
    def __init__(self, message, slices=()):
        super().__init__(message)
        self.slices = tuple(int(j) for j in slices)


class DefectiveSliceError(CamatError, ArithmeticError):
    def __init__(self, message, slices=()):
        super().__init__(message)
        self.slices = tuple(int(j) for j in slices)


class CapExceededError(CamatError):
    """Eigenvalue enumeration would exceed the combination cap."""


class NoConvergenceError(CamatError):
    """An iteration hit its limit. The partial result is kept on ``result``."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class TieWarning(UserWarning):
    """Slice eigenvalues share a magnitude; the canonical set may not be unique."""
