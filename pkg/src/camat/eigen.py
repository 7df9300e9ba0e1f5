"""Eigenvalues and eigenvectors over K_k.

Everything decouples in Fourier space: an eigenpair of ``A`` is an
assembly of one eigenpair per slice ``Â_j``.  The canonical set picks, for
each rank ``i``, the ``i``-th largest-magnitude eigenvalue of every slice.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError, DefectiveSliceError, TieWarning
from .linalg import CircMatrix, determinant, inv, matmul, norm
from .scalar import CircScalar
from .transform import icft, is_real_spectrum

TIE_RTOL = 1e-12
DEFECT_COND = 1e12
ENUMERATION_CAP = 10**5
_PHASE_SIG = 1e-8


def _sort_order(values):
    """Descending modulus; ties (within TIE_RTOL) by descending real then imaginary part."""
    values = np.asarray(values)
    mods = np.abs(values)
    order = list(np.argsort(-mods, kind="stable"))
    tol = TIE_RTOL * max(float(mods.max(initial=0.0)), np.finfo(float).tiny)
    groups, tie = [], False
    for idx in order:
        if groups and abs(mods[groups[-1][-1]] - mods[idx]) <= tol:
            groups[-1].append(idx)
            tie = True
        else:
            groups.append([idx])
    out = []
    for g in groups:
        out.extend(sorted(g, key=lambda i: (-values[i].real, -values[i].imag)))
    return np.array(out, dtype=int), tie


def _fix_phase(vecs):
    """Unit columns whose first significant component is real and positive."""
    vecs = vecs / np.linalg.norm(vecs, axis=0, keepdims=True)
    for c in range(vecs.shape[1]):
        v = vecs[:, c]
        p = int(np.argmax(np.abs(v) > _PHASE_SIG * np.abs(v).max()))
        if np.iscomplexobj(vecs):
            vecs[:, c] = v * (abs(v[p]) / v[p])
        elif v[p] < 0:
            vecs[:, c] = -v
    return vecs


def slice_sorted_eig(M):
    """Eigen-decompose one dense slice, sorted by descending magnitude.

    Returns ``(values, vectors, tie)``.  Columns of ``vectors`` have unit
    2-norm with the first significant component made real-positive; ``tie``
    reports eigenvalues sharing a magnitude.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("slice_sorted_eig needs a square matrix")
    vals, vecs = np.linalg.eig(M)
    order, tie = _sort_order(vals)
    return vals[order], _fix_phase(vecs[:, order]), tie


@dataclass
class CanonicalEigenSet:
    """Magnitude-ordered eigenpairs ``(lambdas[i], vectors[i])``."""

    lambdas: list
    vectors: list
    warnings: list = field(default_factory=list)
    values_fourier: np.ndarray = None
    vectors_fourier: np.ndarray = None

    def __len__(self):
        return len(self.lambdas)

    def eigenvalue_matrix(self):
        return CircMatrix.diag(self.lambdas)

    def eigenvector_matrix(self):
        return CircMatrix.from_fourier(self.vectors_fourier, real=all(v.is_real for v in self.vectors))

    def reconstruct(self):
        X = self.eigenvector_matrix()
        return matmul(matmul(X, self.eigenvalue_matrix()), inv(X))


def _slice_plan(A):
    """Slices to decompose directly, and the conjugate mirrors for real ``A``."""
    k = A.k
    if not A.is_real:
        return list(range(k)), {}
    direct = list(range(k // 2 + 1))
    mirrored = {k - j: j for j in range(1, (k + 1) // 2)}
    return direct, mirrored


def _self_conjugate(j, k):
    return j == 0 or (k % 2 == 0 and j == k // 2)


def canonical_eig(A):
    """Canonical eigenvalues and eigenvectors of a square matrix over K_k.

    For real ``A`` only slices ``0 .. k//2`` are decomposed and the rest are
    taken as complex conjugates, so the result is real whenever the
    self-conjugate slices have real spectra.

    Raises
    ------
    DefectiveSliceError
        A slice's eigenvector matrix has condition number above 1e12.
    """
    m, n = A.shape
    if m != n:
        raise ValueError("canonical_eig needs a square matrix")
    k = A.k
    F = A.fourier
    vals = np.zeros((k, n), dtype=np.complex128)
    vecs = np.zeros((k, n, n), dtype=np.complex128)
    notes, defective = [], []
    direct, mirrored = _slice_plan(A)
    for j in direct:
        M = F[j].real if (A.is_real and _self_conjugate(j, k)) else F[j]
        d, V, tie = slice_sorted_eig(M)
        if np.linalg.cond(V) > DEFECT_COND:
            defective.append(j)
        if tie:
            notes.append(f"slice {j}: eigenvalues share a magnitude; canonical set may not be unique")
        vals[j], vecs[j] = d, V
    if defective:
        raise DefectiveSliceError(f"slices {defective} are (numerically) defective", defective)
    for j, src in mirrored.items():
        vals[j] = vals[src].conj()
        vecs[j] = vecs[src].conj()
    for note in notes:
        warnings.warn(note, TieWarning, stacklevel=2)

    real_vals = A.is_real and is_real_spectrum(vals)
    real_vecs = A.is_real and is_real_spectrum(vecs)
    lambdas = [CircScalar.from_coeffs(vals[:, i], real=real_vals) for i in range(n)]
    X = icft(vecs, real=real_vecs)
    vectors = [X.column(i) for i in range(n)]
    return CanonicalEigenSet(lambdas, vectors, notes, vals, X.fourier)


def _slice_spectra(A):
    k = A.k
    F = A.fourier
    spectra = [None] * k
    direct, mirrored = _slice_plan(A)
    for j in direct:
        M = F[j].real if (A.is_real and _self_conjugate(j, k)) else F[j]
        w = np.linalg.eigvals(M).astype(np.complex128)
        uniq = []
        scale = max(1.0, float(np.abs(w).max(initial=0.0)))
        for v in w[_sort_order(w)[0]]:
            if all(abs(v - u) > 1e-10 * scale for u in uniq):
                uniq.append(v)
        spectra[j] = np.array(uniq)
    for j, src in mirrored.items():
        spectra[j] = spectra[src].conj()
    return spectra


def enumerate_eigenvalues(A, real_only=False, cap=ENUMERATION_CAP):
    """Every eigenvalue of ``A``: all combinations of one slice eigenvalue per slice.

    The count is the product of the numbers of distinct slice eigenvalues
    (``n**k`` for simple spectra).  ``real_only`` keeps the real-valued ones.
    """
    m, n = A.shape
    if m != n:
        raise ValueError("enumerate_eigenvalues needs a square matrix")
    spectra = _slice_spectra(A)
    total = int(np.prod([len(s) for s in spectra], dtype=object))
    if total > cap:
        raise CapExceededError(f"{total} eigenvalue combinations exceed the cap of {cap}")
    out = []
    for combo in itertools.product(*spectra):
        c = np.array(combo, dtype=np.complex128)
        real = is_real_spectrum(c)
        if real_only and not real:
            continue
        out.append(CircScalar.from_coeffs(c, real=real))
    return out


def verify_eigenpair(A, lam, x):
    """Return ``(det_residual, vec_residual)`` for a candidate eigenpair.

    The two are reported separately: ``A ∘ x = λ ∘ x`` can hold for
    ``λ`` that are not roots of ``det(A - λ ∘ I)``.
    """
    n = A.shape[0]
    if x.shape != (n, 1) or x.k != A.k or lam.k != A.k:
        raise ValueError("eigenpair dimensions do not match the matrix")
    if not np.any(x.fourier):
        raise ValueError("an eigenvector must be nonzero")
    shifted = A - CircMatrix.identity(n, A.k) * lam
    det_res = determinant(shifted, max_n=max(n, 8)).magnitude()
    vec_res = norm(matmul(A, x) - x * lam).magnitude()
    return det_res, vec_res
