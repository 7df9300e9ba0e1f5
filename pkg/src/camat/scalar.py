"""The ring K_k of circulant scalars.

A :class:`CircScalar` is identified with the ``k`` parameters of a ``k x k``
circulant matrix (its first column).  Arithmetic runs on the Fourier
coefficients, which are the eigenvalues of that circulant; the parameter
vector is recomputed lazily when read.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from numbers import Number

import numpy as np

from . import _fourier
from .errors import NonRealSpectrumError, ZeroDivisorError

ZERO_DIVISOR_RTOL = 1e-12
SPECTRAL_FUNCTIONS = ("abs", "angle", "conj", "sqrt")


def _readonly(arr):
    arr.flags.writeable = False
    return arr


class CircScalar:
    """Element of the circulant algebra K_k.

    Parameters
    ----------
    params : sequence of numbers
        The ``k`` defining parameters (first column of the circulant).
        A complex dtype marks the scalar as complex-valued.

    Examples
    --------
    >>> a = CircScalar([2, 3, 1])
    >>> a.coeffs.round(6)
    array([ 6.+0.j      ,  0.-1.732051j, -0.+1.732051j])
    """

    __slots__ = ("_coeffs", "_vec", "_real")

    def __init__(self, params):
        vec = np.array(params)
        if vec.ndim != 1 or vec.size == 0:
            raise ValueError("a circulant scalar needs a non-empty 1-d parameter list")
        real = not np.iscomplexobj(vec)
        vec = vec.astype(np.float64 if real else np.complex128)
        self._vec = _readonly(vec)
        self._coeffs = _readonly(_fourier.to_coeffs(vec))
        self._real = real

    @classmethod
    def from_coeffs(cls, coeffs, real=None):
        """Build a scalar from its Fourier coefficients.

        With ``real=None`` the scalar is flagged real when the coefficients
        are conjugate-symmetric to within roundoff.
        """
        coeffs = np.array(coeffs, dtype=np.complex128)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d array")
        if real is None:
            tol = 1e-12 * max(1.0, _fourier.scale_of(coeffs))
            real = _fourier.symmetry_deviation(coeffs) <= tol
        obj = cls.__new__(cls)
        obj._coeffs = _readonly(coeffs)
        obj._vec = None
        obj._real = bool(real)
        return obj

    @classmethod
    def one(cls, k):
        return cls(np.eye(1, k).ravel())

    @classmethod
    def zero(cls, k):
        return cls(np.zeros(k))

    @classmethod
    def constant(cls, value, k):
        """``value`` times the multiplicative identity."""
        vec = np.zeros(k, dtype=np.result_type(value, np.float64))
        vec[0] = value
        return cls(vec)

    # -- representations -------------------------------------------------

    @property
    def k(self):
        return self._coeffs.size

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def vec(self):
        if self._vec is None:
            self._vec = _readonly(_fourier.to_params(self._coeffs, real=self._real))
        return self._vec

    @property
    def is_real(self):
        return self._real

    def to_circ_matrix(self):
        """Dense ``k x k`` circulant; column ``j`` is ``vec`` shifted down by ``j``."""
        k = self.k
        idx = (np.arange(k)[:, None] - np.arange(k)[None, :]) % k
        return self.vec[idx]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CircScalar):
            if other.k != self.k:
                raise ValueError(f"mismatched scalar lengths {self.k} and {other.k}")
            return other
        if isinstance(other, Number):
            return CircScalar.constant(other, self.k)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CircScalar.from_coeffs(self._coeffs + other._coeffs, self._real and other._real)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CircScalar.from_coeffs(self._coeffs - other._coeffs, self._real and other._real)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CircScalar.from_coeffs(-self._coeffs, self._real)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CircScalar.from_coeffs(self._coeffs * other._coeffs, self._real and other._real)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, p):
        return CircScalar.from_coeffs(self._coeffs ** int(p), self._real)

    def zero_divisor_tol(self):
        return ZERO_DIVISOR_RTOL * max(1.0, self.magnitude())

    def zero_slices(self, tol=None):
        """0-based indices of Fourier coefficients with modulus at or below ``tol``."""
        tol = self.zero_divisor_tol() if tol is None else tol
        return np.flatnonzero(np.abs(self._coeffs) <= tol)

    def is_zero_divisor(self, tol=None):
        return self.zero_slices(tol).size > 0

    def inverse(self, tol=None):
        bad = self.zero_slices(tol)
        if bad.size:
            raise ZeroDivisorError(f"scalar is a zero divisor at slices {bad.tolist()}", bad)
        return CircScalar.from_coeffs(1.0 / self._coeffs, self._real)

    # -- spectral functions ----------------------------------------------

    def abs(self):
        return CircScalar.from_coeffs(np.abs(self._coeffs), self._real)

    def conj(self):
        return CircScalar.from_coeffs(self._coeffs.conj(), self._real)

    def angle(self, policy="strict", tol=None):
        """Orthogonal-circulant phase: coefficients ``c / |c|``.

        ``policy="lenient"`` maps a zero coefficient to 1 instead of raising.
        """
        mod = np.abs(self._coeffs)
        bad = self.zero_slices(tol)
        if bad.size:
            if policy == "strict":
                raise ZeroDivisorError(f"angle undefined at zero slices {bad.tolist()}", bad)
            if policy != "lenient":
                raise ValueError(f"unknown angle policy {policy!r}")
        safe = np.where(mod > 0, mod, 1.0)
        out = np.where(mod > 0, self._coeffs / safe, 1.0)
        out[bad] = 1.0
        return CircScalar.from_coeffs(out, self._real)

    def sqrt(self):
        out = np.sqrt(self._coeffs)
        real = self._real
        if real:
            k = self.k
            selfconj = [0] + ([k // 2] if k % 2 == 0 else [])
            real = bool(np.all(self._coeffs[selfconj].real >= 0))
        return CircScalar.from_coeffs(out, real)

    def magnitude(self):
        """Spectral norm of the circulant, i.e. the largest coefficient modulus."""
        return float(np.max(np.abs(self._coeffs)))

    # -- comparison helpers -------------------------------------------------

    def isclose(self, other, atol=1e-12):
        other = self._coerce(other)
        return bool(np.max(np.abs(self._coeffs - other._coeffs)) <= atol)

    def __repr__(self):
        vals = ", ".join(_fourier.format_number(v) for v in self.vec)
        return f"CircScalar([{vals}])"

    def to_literal(self):
        return f"{self.k}:" + ",".join(_fourier.format_number(v) for v in self.vec)


def parse_scalar(text):
    """Parse the ``k:v1,...,vk`` literal."""
    head, sep, body = text.strip().partition(":")
    if not sep:
        raise ValueError(f"scalar literal {text!r} lacks the 'k:' prefix")
    k = int(head)
    vals = [_fourier.parse_number(t) for t in body.split(",") if t.strip()]
    if len(vals) != k:
        raise ValueError(f"literal declares k={k} but has {len(vals)} values")
    if any(isinstance(v, complex) for v in vals):
        return CircScalar(np.array(vals, dtype=np.complex128))
    return CircScalar(np.array(vals, dtype=np.float64))


# -- functional surface ------------------------------------------------------

def scalar_from_vec(params):
    return CircScalar(params)


def to_circ_matrix(a):
    return a.to_circ_matrix()


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def inverse(a, tol=None):
    return a.inverse(tol)


def spectral_map(a, f, angle_policy="strict"):
    if f == "abs":
        return a.abs()
    if f == "angle":
        return a.angle(angle_policy)
    if f == "conj":
        return a.conj()
    if f == "sqrt":
        return a.sqrt()
    raise ValueError(f"unsupported spectral function {f!r}; choose from {SPECTRAL_FUNCTIONS}")


def magnitude(a):
    return a.magnitude()


class Relation(enum.Enum):
    LESS_EQ = "LessEq"
    GREATER_EQ = "GreaterEq"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class OrderingOutcome:
    relation: Relation
    strict: bool

    @property
    def le(self):
        """True when ``a <= b`` holds (including equality)."""
        return self.relation in (Relation.LESS_EQ, Relation.EQUAL)

    @property
    def ge(self):
        return self.relation in (Relation.GREATER_EQ, Relation.EQUAL)


def _real_coeffs(a, tol):
    c = a.coeffs
    lim = tol if tol is not None else 1e-12 * max(1.0, a.magnitude())
    if np.max(np.abs(c.imag)) > lim:
        raise NonRealSpectrumError(f"{a!r} has non-real Fourier coefficients; ordering is undefined")
    return c.real


def partial_order(a, b, tol=0.0, imag_tol=None):
    """Element-wise ordering of the (real) Fourier coefficients of ``a`` and ``b``.

    ``tol`` is an absolute slack applied to every comparison.
    """
    if a.k != b.k:
        raise ValueError("mismatched scalar lengths")
    x = _real_coeffs(a, imag_tol)
    y = _real_coeffs(b, imag_tol)
    le = bool(np.all(x <= y + tol))
    ge = bool(np.all(x >= y - tol))
    if le and ge:
        return OrderingOutcome(Relation.EQUAL, False)
    if le:
        return OrderingOutcome(Relation.LESS_EQ, bool(np.all(x < y - tol)))
    if ge:
        return OrderingOutcome(Relation.GREATER_EQ, bool(np.all(x > y + tol)))
    return OrderingOutcome(Relation.INCOMPARABLE, False)
