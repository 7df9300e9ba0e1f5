"""Convergence studies on the Poisson system (or a user matrix), written as CSV."""

from __future__ import annotations

import csv
import io
import math
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import _fourier
from .eigen import canonical_eig
from .errors import NoConvergenceError
from .iterative import gmres, power_method, random_vector
from .linalg import CircMatrix, solve
from .poisson import build_poisson, poisson_canonical_eigs, poisson_rates

DROP_FACTOR = 1e4
FIT_POINTS = 50


def fit_rate(values, points=FIT_POINTS):
    """Geometric rate from a least-squares line through ``log(values)``.

    Uses the last ``min(points, len(values) // 2)`` positive entries.
    Returns NaN when fewer than two are available.
    """
    v = np.asarray(values, dtype=float)
    count = min(points, len(v) // 2)
    tail = v[len(v) - count:]
    idx = np.arange(len(v) - count, len(v))
    keep = tail > 0
    if keep.sum() < 2:
        return math.nan
    slope = np.polyfit(idx[keep], np.log(tail[keep]), 1)[0]
    return float(np.exp(slope))


def find_drop(residuals, factor=DROP_FACTOR):
    """First index ``t`` with ``residuals[t-1] / residuals[t] >= factor`` (None if absent)."""
    r = np.asarray(residuals, dtype=float)
    for t in range(1, len(r)):
        if r[t] == 0.0 and r[t - 1] > 0.0:
            return t
        if r[t] > 0.0 and r[t - 1] / r[t] >= factor:
            return t
    return None


@contextmanager
def _sink(out):
    if out is None:
        yield io.StringIO()
    elif isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", newline="", encoding="ascii") as fh:
            yield fh
    else:
        yield out


def _fmt(x):
    return _fourier.format_number(x)


@dataclass
class PowerReport:
    status: int
    converged: bool
    iterations: int
    eigenvalue: object
    reference: object
    fitted_rate: float
    predicted_rate: float
    rows: list


def run_power_experiment(N=16, tol=1e-10, maxiter=100_000, seed=0, out=None, A=None,
                         phase_ref="pivot"):
    """Power method study: eigenvector change (max over slices) and per-slice eigenvalue error.

    Columns: ``iteration, eigvec_change_max, eigval_err_1 .. eigval_err_k`` where
    ``eigval_err_j = |mu_j - lambda_1,j|`` in Fourier space.  Two comment lines
    close the file with the fitted and predicted tail rates.
    """
    if A is None:
        A = build_poisson(N).A
        lam1 = poisson_canonical_eigs(N)[0]
        predicted = poisson_rates(N)[1]
    else:
        eig = canonical_eig(A)
        lam1 = eig.lambdas[0]
        if len(eig.lambdas) > 1:
            with np.errstate(divide="ignore", invalid="ignore"):
                predicted = float(np.max(np.abs(eig.lambdas[1].coeffs) / np.abs(lam1.coeffs)))
        else:
            predicted = math.nan

    try:
        result = power_method(A, seed=seed, tol=tol, maxiter=maxiter, phase_ref=phase_ref)
        status = 0
    except NoConvergenceError as err:
        result = err.result
        status = 2

    metric = [rec.max_metric for rec in result.history]
    err = np.abs(result.eigenvalue_history - lam1.coeffs[None, :])
    rows = [[rec.iteration, rec.max_metric, *err[i]] for i, rec in enumerate(result.history)]
    fitted = fit_rate(metric)

    with _sink(out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iteration", "eigvec_change_max"] + [f"eigval_err_{j + 1}" for j in range(A.k)])
        for row in rows:
            w.writerow([row[0]] + [_fmt(v) for v in row[1:]])
        fh.write(f"# converged={result.converged} iterations={result.iterations}\n")
        fh.write(f"# fitted_rate={_fmt(fitted)} predicted_slowest_rate={_fmt(predicted)}\n")

    return PowerReport(status, result.converged, result.iterations, result.eigenvalue, lam1,
                       fitted, predicted, rows)


@dataclass
class GMRESReport:
    status: int
    converged: bool
    iterations: int
    drop_iteration: object
    residual_max: list
    errors: np.ndarray  # (iterations + 1, k), row t = error after t steps
    solution: CircMatrix


def run_gmres_experiment(N=50, tmax=None, rtol=1e-12, out=None, A=None, b=None, identity=False,
                         seed=0):
    """GMRES study: max-slice residual and per-slice solution error per iteration.

    Row ``t`` holds the state after a ``t``-step Arnoldi factorization
    (``t = 0`` is the zero initial guess).  Columns:
    ``iteration, residual_max, err_1 .. err_k``.  The closing comment line
    names the first iteration where the residual falls by ``DROP_FACTOR``.
    """
    if A is None:
        system = build_poisson(N)
        A = system.A
        if b is None:
            b = system.f
        if identity:
            A = CircMatrix.identity(A.shape[0], A.k)
    elif b is None:
        b = random_vector(A.shape[0], A.k, seed)

    exact = solve(A, b).fourier[:, :, 0]
    errors = [np.linalg.norm(exact, axis=1)]

    def track(t, U):
        errors.append(np.linalg.norm(exact - U, axis=1))

    res = gmres(A, b, tmax=tmax, rtol=rtol, callback=track)
    beta = np.linalg.norm(b.fourier[:, :, 0], axis=1)
    residual_max = [float(beta.max())] + [rec.max_metric for rec in res.history]
    drop = find_drop(residual_max)
    errors = np.array(errors)

    with _sink(out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iteration", "residual_max"] + [f"err_{j + 1}" for j in range(A.k)])
        for t, r in enumerate(residual_max):
            w.writerow([t, _fmt(r)] + [_fmt(e) for e in errors[t]])
        fh.write(f"# converged={res.converged} iterations={res.iterations} "
                 f"drop_iteration={drop if drop is not None else 'none'}\n")

    status = 0 if res.converged else 2
    return GMRESReport(status, res.converged, res.iterations, drop, residual_max, errors, res.u)
