"""Power method, Arnoldi process and GMRES over K_k.

All three run ``k`` independent scalar iterations in Fourier space.  The
power method is written with the algebra's own operations; Arnoldi and
GMRES work on the slice arrays directly so a slice that hits a lucky
breakdown can be frozen while the others continue.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergenceError, ZeroDivisorError
from .linalg import CircMatrix, inner_product, matmul, norm
from .scalar import CircScalar

BREAKDOWN_RTOL = 1e-12


@dataclass(frozen=True)
class ConvergenceRecord:
    """One row of a convergence history: per-slice metric and its maximum."""

    iteration: int
    per_slice: np.ndarray
    max_metric: float


def _record(it, per_slice):
    per_slice = np.asarray(per_slice, dtype=float)
    return ConvergenceRecord(it, per_slice, float(per_slice.max()))


def random_vector(n, k, seed=None):
    """Vector with parameters drawn uniformly from [-1, 1]."""
    rng = np.random.default_rng(seed)
    return CircMatrix(rng.uniform(-1.0, 1.0, size=(n, 1, k)))


def rayleigh_quotient(A, x):
    """``<A∘x, x> ∘ <x, x>^{-1}``."""
    num = inner_product(matmul(A, x), x)
    den = inner_product(x, x)
    return num * den.inverse()


# -- power method ---------------------------------------------------------------


@dataclass
class PowerResult:
    eigenvector: CircMatrix
    eigenvalue: CircScalar
    history: list
    converged: bool
    iterations: int
    # Rayleigh quotient coefficients per iteration, shape (iterations, k)
    eigenvalue_history: np.ndarray = None


def _phase_reference(X, mode):
    """Per-slice reference component of Fourier vector data ``X`` (k, n)."""
    if mode == "first":
        return np.zeros(X.shape[0], dtype=int)
    if mode == "pivot":
        return np.argmax(np.abs(X), axis=1)
    raise ValueError(f"unknown phase reference {mode!r}")


def _align(X, ref, lenient=False):
    """Divide each slice by the phase of its reference component (angle(x_ref)^{-1} ∘ x).

    With ``lenient`` a slice that is entirely zero keeps phase 1.
    """
    r = X[np.arange(X.shape[0]), ref]
    mod = np.abs(r)
    bad = mod == 0
    if lenient:
        bad &= np.any(X != 0, axis=1)
    if bad.any():
        idx = np.flatnonzero(bad)
        raise ZeroDivisorError(f"angle of reference component undefined on slices {idx.tolist()}", idx)
    phase = np.where(mod > 0, mod / np.where(mod > 0, r, 1.0), 1.0)
    return X * phase[:, None]


def _change_metric(X_new, X_old, mode, lenient=False):
    ref = _phase_reference(X_new, mode)
    diff = _align(X_new, ref, lenient) - _align(X_old, ref, lenient)
    return np.linalg.norm(diff, axis=1)


def _renormalize(y, breakdown, tol_scale):
    alpha = norm(y)
    try:
        return y * alpha.inverse()
    except ZeroDivisorError as err:
        if breakdown != "renormalize":
            raise ZeroDivisorError(
                f"power iteration broke down: norm is a zero divisor on slices {list(err.slices)}",
                err.slices) from None
    c = alpha.coeffs.real
    keep = c > tol_scale * max(1.0, c.max())
    scale = np.where(keep, 1.0 / np.where(keep, c, 1.0), 0.0)
    return CircMatrix.from_fourier(y.fourier * scale[:, None, None], y.is_real)


def power_method(A, x0=None, tol=1e-8, maxiter=1000, seed=None, phase_ref="pivot",
                 breakdown="raise", callback=None):
    """Power iteration in the circulant algebra.

    Iterates ``x <- A∘x ∘ ||A∘x||^{-1}`` until the phase-aligned change
    ``||angle(x_p)^{-1}∘x - angle(x'_p)^{-1}∘x'||`` is below ``tol`` on every
    Fourier slice.

    Parameters
    ----------
    A : CircMatrix
        Square matrix.
    x0 : CircMatrix, optional
        Start vector; defaults to :func:`random_vector` with ``seed``.
    tol : float
        Convergence threshold applied to each slice of the change metric.
    maxiter : int
    phase_ref : {"pivot", "first"}
        Which component fixes the phase before comparing iterates.
        ``"first"`` always uses component 1; ``"pivot"`` uses, per slice, the
        largest-modulus component of the newer iterate.  They agree whenever
        that component is the first one, but ``"first"`` never settles when a
        slice's dominant eigenvector has a zero first component.
    breakdown : {"raise", "renormalize"}
        On a zero-divisor norm, raise, or rescale only the nonzero slices.
    callback : callable, optional
        Called as ``callback(iteration, x)`` with each new iterate.

    Returns
    -------
    PowerResult
        ``eigenvalue`` is the Rayleigh quotient of the final iterate.

    Raises
    ------
    NoConvergenceError
        After ``maxiter`` steps; ``err.result`` holds the partial result.
    """
    n, m = A.shape
    if n != m:
        raise ValueError("power_method needs a square matrix")
    x = random_vector(n, A.k, seed) if x0 is None else x0
    x = _renormalize(x, breakdown, BREAKDOWN_RTOL)
    history, mu_hist = [], []
    converged = False
    it = 0
    for it in range(1, maxiter + 1):
        y = matmul(A, x)
        mu_hist.append(inner_product(y, x).coeffs)
        x_new = _renormalize(y, breakdown, BREAKDOWN_RTOL)
        per_slice = _change_metric(x_new.fourier[:, :, 0], x.fourier[:, :, 0], phase_ref,
                                   lenient=breakdown == "renormalize")
        history.append(_record(it, per_slice))
        x = x_new
        if callback is not None:
            callback(it, x)
        if np.all(per_slice < tol):
            converged = True
            break
    # x has unit norm (on every nonzero slice), so <A∘x, x> is the Rayleigh quotient
    result = PowerResult(x, inner_product(matmul(A, x), x), history, converged, it,
                         np.array(mu_hist).reshape(len(mu_hist), A.k))
    if not converged:
        raise NoConvergenceError(
            f"power method did not reach tol={tol:g} in {maxiter} iterations "
            f"(last change {history[-1].max_metric:.3g})" if history else "no iterations run",
            result)
    return result


# -- Arnoldi -----------------------------------------------------------------------


@dataclass
class ArnoldiFactorization:
    """``A ∘ Q[:, :t] = Q ∘ H`` with ``Q`` n x (t+1) and ``H`` (t+1) x t."""

    Q: CircMatrix
    H: CircMatrix
    slice_active: np.ndarray
    steps: int
    # step at which each slice broke down (0 while still active)
    breakdown_step: np.ndarray = field(default=None)


class _ArnoldiState:
    """Incremental Fourier-space Arnoldi with per-slice freezing."""

    def __init__(self, A, b, tmax):
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("Arnoldi needs a square matrix")
        if b.shape != (n, 1) or b.k != A.k:
            raise ValueError("starting vector does not match the matrix")
        self.A = A.fourier
        self.real = A.is_real and b.is_real
        k = A.k
        B = b.fourier[:, :, 0]
        beta = np.linalg.norm(B, axis=1)
        bad = np.flatnonzero(beta <= 1e-300)
        if bad.size:
            raise ZeroDivisorError(f"starting vector vanishes on slices {bad.tolist()}", bad)
        self.b = B
        self.beta = beta
        self.Q = np.zeros((k, n, tmax + 1), dtype=np.complex128)
        self.H = np.zeros((k, tmax + 1, tmax), dtype=np.complex128)
        self.Q[:, :, 0] = B / beta[:, None]
        self.active = np.ones(k, dtype=bool)
        self.broke_at = np.zeros(k, dtype=int)
        self.scale = 0.0
        self.t = 0

    def step(self):
        j = self.t
        A, Q, H = self.A, self.Q, self.H
        z = np.einsum("kab,kb->ka", A, Q[:, :, j])
        for i in range(j + 1):
            h = np.einsum("ka,ka->k", Q[:, :, i].conj(), z)
            H[:, i, j] = h
            z = z - h[:, None] * Q[:, :, i]
        hn = np.linalg.norm(z, axis=1)
        self.scale = max(self.scale, float(np.abs(H[:, : j + 1, j]).max()), float(hn.max()))
        newly = self.active & (hn < BREAKDOWN_RTOL * self.scale)
        self.broke_at[newly] = j + 1
        self.active &= ~newly
        # frozen slices have zero basis columns from here on, so their later z and h vanish
        hn = np.where(self.active, hn, 0.0)
        H[:, j + 1, j] = hn
        safe = np.where(self.active, hn, 1.0)
        Q[:, :, j + 1] = np.where(self.active[:, None], z / safe[:, None], 0.0)
        self.t = j + 1

    def effective_steps(self):
        """Per-slice number of usable Krylov columns."""
        return np.where(self.active, self.t, self.broke_at)

    def factorization(self):
        t = self.t
        Q = CircMatrix.from_fourier(self.Q[:, :, : t + 1], real=self.real or None)
        H = CircMatrix.from_fourier(self.H[:, : t + 1, :t], real=self.real or None)
        return ArnoldiFactorization(Q, H, self.active.copy(), t, self.broke_at.copy())


def arnoldi(A, b, t):
    """Arnoldi process (modified Gram-Schmidt) in the circulant algebra.

    A slice whose new subdiagonal entry falls below ``1e-12`` times the
    largest Hessenberg entry seen so far is frozen: its later basis columns
    and Hessenberg entries are zero and ``slice_active`` turns False.
    When every slice has broken down the factorization stops early.
    """
    n = A.shape[0]
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= n (t={t}, n={n})")
    state = _ArnoldiState(A, b, t)
    while state.t < t:
        state.step()
        if not state.active.any():
            break
    fac = state.factorization()
    return fac


# -- GMRES --------------------------------------------------------------------------


@dataclass
class GMRESResult:
    u: CircMatrix
    history: list  # ConvergenceRecord per iteration, absolute per-slice residual norms
    converged: bool
    iterations: int
    factorization: ArnoldiFactorization = None

    @property
    def residual_history(self):
        return self.history


def _hessenberg_lstsq(H, beta):
    """min ||H y - beta e1|| through a QR factorization of H."""
    rhs = np.zeros(H.shape[0], dtype=np.complex128)
    rhs[0] = beta
    Qh, Rh = np.linalg.qr(H, mode="reduced")
    return np.linalg.solve(Rh, Qh.conj().T @ rhs)


def gmres(A, b, tmax=None, rtol=1e-10, callback=None):
    """Unrestarted GMRES over K_k via the circulant Arnoldi process.

    Each step solves ``min ||Ĥ_j y - β̂_j e1||`` independently on every
    slice.  Stops when the largest relative slice residual drops below
    ``rtol``, when every slice has broken down, or at ``tmax``.
    ``callback(t, U)`` receives the Fourier solution slices ``(k, n)``.
    """
    n = A.shape[0]
    tmax = n if tmax is None else min(int(tmax), n)
    state = _ArnoldiState(A, b, tmax)
    k = A.k
    Af, B, beta = state.A, state.b, state.beta
    U = np.zeros((k, n), dtype=np.complex128)
    history = []
    converged = False
    while state.t < tmax:
        state.step()
        t = state.t
        steps = state.effective_steps()
        for j in range(k):
            s = steps[j]
            if s == 0:
                continue
            y = _hessenberg_lstsq(state.H[j, : s + 1, :s], beta[j])
            U[j] = state.Q[j, :, :s] @ y
        res = np.linalg.norm(B - np.einsum("kab,kb->ka", Af, U), axis=1)
        history.append(_record(t, res))
        if callback is not None:
            callback(t, U.copy())
        if np.max(res / beta) < rtol:
            converged = True
            break
        if not state.active.any():
            break
    u = CircMatrix.from_fourier(U[:, :, None], real=state.real or None)
    return GMRESResult(u, history, converged, state.t, state.factorization())
