"""Vectors and matrices over K_k.

A :class:`CircMatrix` keeps its entries' parameters as an ``(m, n, k)``
array (row-major, each scalar's parameters contiguous) and/or the
slice-major Fourier data ``(k, m, n)``.  Whichever is missing is computed on
first access.  All products, solves and decompositions act slice by slice
on the Fourier data.
"""

from __future__ import annotations

from numbers import Number

import numpy as np

from . import _fourier
from .errors import SingularSliceError, ZeroDivisorError
from .scalar import CircScalar

COND_LIMIT = 1e-13
DET_MAX_N = 8


def _readonly(arr):
    arr.flags.writeable = False
    return arr


class CircMatrix:
    """An ``m x n`` matrix whose entries are circulant scalars of length ``k``.

    A vector is the ``n x 1`` case.  Indexing is 0-based: ``A[i, j]`` returns
    a :class:`CircScalar`.
    """

    __slots__ = ("_time", "_fourier", "_real", "_shape", "_k")

    def __init__(self, data):
        data = np.array(data)
        if data.ndim != 3:
            raise ValueError("expected an (m, n, k) parameter array")
        real = not np.iscomplexobj(data)
        data = data.astype(np.float64 if real else np.complex128)
        self._time = _readonly(data)
        self._fourier = None
        self._real = real
        self._shape = data.shape[:2]
        self._k = data.shape[2]
        if self._k == 0:
            raise ValueError("k must be at least 1")

    @classmethod
    def from_fourier(cls, slices, real=None):
        """Wrap slice-major Fourier data ``(k, m, n)``.

        ``real=None`` flags the result real when the slices are
        conjugate-symmetric to within roundoff.
        """
        slices = np.array(slices, dtype=np.complex128)
        if slices.ndim != 3:
            raise ValueError("expected (k, m, n) Fourier slices")
        if real is None:
            tol = 1e-12 * max(1.0, _fourier.scale_of(slices))
            real = _fourier.symmetry_deviation(slices, axis=0) <= tol
        obj = cls.__new__(cls)
        obj._time = None
        obj._fourier = _readonly(slices)
        obj._real = bool(real)
        obj._k = slices.shape[0]
        obj._shape = slices.shape[1:]
        return obj

    @classmethod
    def from_scalars(cls, rows):
        """Build from nested lists of :class:`CircScalar` (or parameter lists)."""
        rows = [[e if isinstance(e, CircScalar) else CircScalar(e) for e in row] for row in rows]
        ks = {e.k for row in rows for e in row}
        if len(ks) != 1:
            raise ValueError("all entries must share the same k")
        if len({len(row) for row in rows}) != 1:
            raise ValueError("ragged rows")
        real = all(e.is_real for row in rows for e in row)
        data = np.array([[e.vec for e in row] for row in rows])
        return cls(data.real if real else data.astype(np.complex128))

    @classmethod
    def from_entries(cls, m, n, k, entries, dtype=float):
        """Sparse construction.

        ``entries`` maps ``(i, j)`` to either a length-``k`` parameter sequence
        or a dict ``{tube_index: value}`` of the nonzero parameters.
        """
        data = np.zeros((m, n, k), dtype=dtype)
        for (i, j), params in entries.items():
            if isinstance(params, dict):
                for t, v in params.items():
                    data[i, j, t] = v
            else:
                data[i, j, :] = params
        return cls(data)

    @classmethod
    def zeros(cls, m, n, k):
        return cls(np.zeros((m, n, k)))

    @classmethod
    def identity(cls, n, k):
        data = np.zeros((n, n, k))
        data[np.arange(n), np.arange(n), 0] = 1.0
        return cls(data)

    @classmethod
    def vector(cls, entries):
        """Column vector from a list of scalars or parameter lists."""
        return cls.from_scalars([[e] for e in entries])

    @classmethod
    def diag(cls, scalars):
        scalars = list(scalars)
        k = scalars[0].k
        n = len(scalars)
        real = all(s.is_real for s in scalars)
        F = np.zeros((k, n, n), dtype=np.complex128)
        for i, s in enumerate(scalars):
            F[:, i, i] = s.coeffs
        return cls.from_fourier(F, real=real)

    # -- representations ----------------------------------------------------

    @property
    def shape(self):
        return tuple(self._shape)

    @property
    def k(self):
        return self._k

    @property
    def is_real(self):
        return self._real

    @property
    def fourier(self):
        """Slice-major Fourier data, shape ``(k, m, n)``."""
        if self._fourier is None:
            F = _fourier.to_coeffs(self._time, axis=-1)
            self._fourier = _readonly(np.ascontiguousarray(np.moveaxis(F, -1, 0)))
        return self._fourier

    @property
    def time(self):
        """Parameter array, shape ``(m, n, k)``."""
        if self._time is None:
            T = _fourier.to_params(self._fourier, axis=0, real=self._real)
            self._time = _readonly(np.ascontiguousarray(np.moveaxis(T, 0, -1)))
        return self._time

    def __getitem__(self, idx):
        i, j = idx
        if isinstance(i, slice) or isinstance(j, slice):
            return self._sub(i, j)
        if self._time is not None:
            return CircScalar(self._time[i, j])
        return CircScalar.from_coeffs(self.fourier[:, i, j], self._real)

    def _sub(self, i, j):
        F = self.fourier
        rows = np.arange(self._shape[0])[i] if isinstance(i, slice) else np.array([i])
        cols = np.arange(self._shape[1])[j] if isinstance(j, slice) else np.array([j])
        return CircMatrix.from_fourier(F[:, rows][:, :, cols], self._real)

    def column(self, j):
        return self._sub(slice(None), j)

    def to_dense(self):
        """The block-circulant ``(m k) x (n k)`` matrix (``tcirc``)."""
        m, n = self._shape
        k = self._k
        idx = (np.arange(k)[:, None] - np.arange(k)[None, :]) % k
        blocks = self.time[:, :, idx]  # (m, n, k, k)
        return blocks.transpose(0, 2, 1, 3).reshape(m * k, n * k)

    def to_scalars(self):
        m, n = self._shape
        return [[self[i, j] for j in range(n)] for i in range(m)]

    # -- arithmetic -----------------------------------------------------------

    def _check_same(self, other):
        if self._shape != other._shape or self._k != other._k:
            raise ValueError(f"shape mismatch {self.shape}/{self.k} vs {other.shape}/{other.k}")

    def __add__(self, other):
        if not isinstance(other, CircMatrix):
            return NotImplemented
        self._check_same(other)
        return CircMatrix.from_fourier(self.fourier + other.fourier, self._real and other._real)

    def __sub__(self, other):
        if not isinstance(other, CircMatrix):
            return NotImplemented
        self._check_same(other)
        return CircMatrix.from_fourier(self.fourier - other.fourier, self._real and other._real)

    def __neg__(self):
        return CircMatrix.from_fourier(-self.fourier, self._real)

    def __matmul__(self, other):
        if not isinstance(other, CircMatrix):
            return NotImplemented
        return matmul(self, other)

    def __mul__(self, other):
        """Scale every entry by a scalar: ``x * alpha`` is ``x ∘ alpha``."""
        if isinstance(other, Number):
            other = CircScalar.constant(other, self._k)
        if not isinstance(other, CircScalar):
            return NotImplemented
        if other.k != self._k:
            raise ValueError("mismatched k")
        return CircMatrix.from_fourier(self.fourier * other.coeffs[:, None, None],
                                       self._real and other.is_real)

    __rmul__ = __mul__

    @property
    def H(self):
        return conj_transpose(self)

    def __repr__(self):
        m, n = self._shape
        return f"CircMatrix({m}x{n}, k={self._k}, {'real' if self._real else 'complex'})"


# -- operations ------------------------------------------------------------------


def matmul(A, B):
    if A.k != B.k:
        raise ValueError(f"mismatched k: {A.k} vs {B.k}")
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"inner dimensions disagree: {A.shape} @ {B.shape}")
    return CircMatrix.from_fourier(A.fourier @ B.fourier, A.is_real and B.is_real)


def conj_transpose(A):
    return CircMatrix.from_fourier(np.conj(np.swapaxes(A.fourier, 1, 2)), A.is_real)


def inner_product(x, y):
    """``<x, y>`` with coefficient j equal to ``y_j^* x_j`` (conjugate on ``y``)."""
    if x.shape != y.shape or x.k != y.k:
        raise ValueError("inner product needs vectors of equal shape and k")
    c = np.einsum("kij,kij->k", y.fourier.conj(), x.fourier)
    return CircScalar.from_coeffs(c, x.is_real and y.is_real)


def norm(x):
    """Scalar-valued norm; coefficient j is the 2-norm of slice j."""
    F = x.fourier
    # scale each slice by its largest entry so tiny vectors do not underflow
    s = np.abs(F).max(axis=(1, 2), initial=0.0)
    safe = np.where(s > 0, s, 1.0)
    # real and imaginary parts separately: complex division mishandles subnormals
    re = F.real / safe[:, None, None]
    im = F.imag / safe[:, None, None]
    c = s * np.sqrt(np.sum(re * re + im * im, axis=(1, 2)))
    return CircScalar.from_coeffs(c, x.is_real)


def determinant(A, max_n=DET_MAX_N):
    m, n = A.shape
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    if n > max_n:
        raise ValueError(f"determinant limited to n <= {max_n} (got {n})")
    return CircScalar.from_coeffs(np.linalg.det(A.fourier), A.is_real)


def singular_slices(A, cond_limit=COND_LIMIT):
    """0-based indices of slices whose reciprocal condition number is below ``cond_limit``."""
    with np.errstate(divide="ignore", invalid="ignore"):
        rcond = 1.0 / np.linalg.cond(A.fourier)
    rcond = np.nan_to_num(rcond, nan=0.0)
    return np.flatnonzero(rcond < cond_limit)


def solve(A, b, cond_limit=COND_LIMIT):
    """Solve ``A ∘ x = b`` by independent dense solves on each Fourier slice."""
    m, n = A.shape
    if m != n:
        raise ValueError("solve needs a square matrix")
    if b.shape[0] != n or b.k != A.k:
        raise ValueError("right-hand side does not match the matrix")
    bad = singular_slices(A, cond_limit)
    if bad.size:
        raise SingularSliceError(f"numerically singular slices {bad.tolist()}", bad)
    X = np.linalg.solve(A.fourier, b.fourier)
    return CircMatrix.from_fourier(X, A.is_real and b.is_real)


def inv(A, cond_limit=COND_LIMIT):
    return solve(A, CircMatrix.identity(A.shape[0], A.k), cond_limit)


def spans(X, tol=None):
    """True when every slice has full row rank, i.e. the columns span K_k^m."""
    m = X.shape[0]
    return bool(np.all(np.linalg.matrix_rank(X.fourier, tol=tol) == m))


def is_basis(X, tol=None):
    m, n = X.shape
    return m == n and spans(X, tol)


def hstack(columns):
    cols = list(columns)
    F = np.concatenate([c.fourier for c in cols], axis=2)
    return CircMatrix.from_fourier(F, all(c.is_real for c in cols))


def normalize(x, tol=None):
    """``x ∘ ||x||^{-1}``; raises :class:`ZeroDivisorError` on a zero slice."""
    nrm = norm(x)
    try:
        return x * nrm.inverse(tol)
    except ZeroDivisorError as err:
        raise ZeroDivisorError(f"cannot normalise: zero slices {list(err.slices)}", err.slices) from None
