"""Circulant Fourier transform (CFT) of scalars, vectors and matrices.

``cft`` turns a matrix over K_k into ``k`` independent dense slices; the
stride permutation of the block-diagonal picture is implicit in the
slice-major layout and never built.
"""

from dataclasses import dataclass

import numpy as np

from . import _fourier
from .errors import SymmetryViolationError
from .linalg import CircMatrix
from .scalar import CircScalar

PROJ_TOL = 1e-10


@dataclass(frozen=True)
class FourierBlocks:
    """The ``k`` dense complex ``m x n`` slices of a matrix over K_k."""

    slices: np.ndarray

    def __post_init__(self):
        arr = np.array(self.slices, dtype=np.complex128)
        if arr.ndim != 3:
            raise ValueError("FourierBlocks needs a (k, m, n) array")
        arr.flags.writeable = False
        object.__setattr__(self, "slices", arr)

    @property
    def k(self):
        return self.slices.shape[0]

    @property
    def m(self):
        return self.slices.shape[1]

    @property
    def n(self):
        return self.slices.shape[2]

    def __getitem__(self, j):
        return self.slices[j]

    def __len__(self):
        return self.k

    def block_diagonal(self):
        """Dense ``(k m) x (k n)`` block-diagonal matrix of the slices."""
        k, m, n = self.slices.shape
        out = np.zeros((k * m, k * n), dtype=np.complex128)
        for j in range(k):
            out[j * m:(j + 1) * m, j * n:(j + 1) * n] = self.slices[j]
        return out


def cft(A):
    if isinstance(A, CircScalar):
        return FourierBlocks(A.coeffs[:, None, None])
    return FourierBlocks(A.fourier)


def icft(B, real=None):
    """Inverse transform; ``real=None`` detects conjugate symmetry.

    Data detected (or declared) real is symmetrised first so the parameters
    come out exactly real.
    """
    slices = B.slices if isinstance(B, FourierBlocks) else np.asarray(B, dtype=np.complex128)
    if real is None:
        real = is_real_spectrum(slices)
    if real:
        slices = _fourier.symmetrize(slices, axis=0)
    return CircMatrix.from_fourier(slices, real=bool(real))


def _slices(B):
    if isinstance(B, FourierBlocks):
        return B.slices
    if isinstance(B, CircScalar):
        return B.coeffs
    return np.asarray(B)


def is_real_spectrum(B, tol=None):
    """Whether slice 1 is real and slice j equals conj(slice k-j+2), within ``tol``.

    ``tol`` defaults to ``1e-12 * max(1, max |entry|)``.
    """
    s = _slices(B)
    if tol is None:
        tol = 1e-12 * max(1.0, _fourier.scale_of(s))
    return _fourier.symmetry_deviation(s, axis=0) <= tol


def project_real(B, proj_tol=PROJ_TOL):
    s = _slices(B)
    dev = _fourier.symmetry_deviation(s, axis=0)
    if dev > proj_tol:
        raise SymmetryViolationError(
            f"conjugate-symmetry deviation {dev:.3g} exceeds projection tolerance {proj_tol:.3g}")
    out = _fourier.symmetrize(s, axis=0)
    if out.ndim == 1:
        out = out[:, None, None]
    return FourierBlocks(out)
