"""Array-level helpers for the circulant Fourier transform.

Coefficient convention: ``coeffs[j] = sum_i vec[i] * exp(-2j*pi*i*j/k)``,
i.e. the usual forward FFT. The inverse carries the 1/k factor.
"""

import numpy as np


def to_coeffs(vec, axis=-1):
    return np.fft.fft(np.asarray(vec), axis=axis)


def to_params(coeffs, axis=-1, real=False):
    out = np.fft.ifft(np.asarray(coeffs), axis=axis)
    return out.real.copy() if real else out


def mirror(k):
    """Index map j -> (k - j) mod k pairing each slice with its conjugate partner."""
    return (-np.arange(k)) % k


def symmetry_deviation(coeffs, axis=0):
    """Largest |c_j - conj(c_{-j})| along ``axis`` (0 for an exactly real signal)."""
    coeffs = np.asarray(coeffs)
    k = coeffs.shape[axis]
    if coeffs.size == 0:
        return 0.0
    partner = np.take(coeffs, mirror(k), axis=axis)
    return float(np.max(np.abs(coeffs - partner.conj())))


def symmetrize(coeffs, axis=0):
    coeffs = np.asarray(coeffs)
    partner = np.take(coeffs, mirror(coeffs.shape[axis]), axis=axis)
    return 0.5 * (coeffs + partner.conj())


def scale_of(coeffs):
    coeffs = np.asarray(coeffs)
    return float(np.max(np.abs(coeffs))) if coeffs.size else 0.0


def format_number(z):
    """Text form with 17 significant digits; complex values as ``re+imi``."""
    if isinstance(z, (complex, np.complexfloating)):
        return f"{z.real:.17g}{z.imag:+.17g}i"
    return f"{float(z):.17g}"


def parse_number(text):
    text = text.strip()
    if text.endswith("i") or text.endswith("j"):
        body = text[:-1]
        # split at the sign that starts the imaginary part (skip exponent signs)
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                return complex(float(body[:pos]), float(body[pos:]))
        return complex(0.0, float(body))
    return float(text)
