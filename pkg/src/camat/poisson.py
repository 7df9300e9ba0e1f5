"""The periodic/Dirichlet Poisson test problem over K_N.

The 5-point Laplacian on an ``N x N`` grid, periodic in ``y`` and fixed in
``x``, is block tridiagonal with circulant blocks: an ``(N-1) x (N-1)``
matrix over K_N with diagonal scalar ``(4, -1, 0, ..., 0, -1)`` and
off-diagonal scalar ``-1`` (times the identity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import CircMatrix
from .scalar import CircScalar


@dataclass(frozen=True)
class PoissonSystem:
    N: int
    A: CircMatrix
    f: CircMatrix
    spike: tuple  # (row, tube, value), 1-based row and tube

    @property
    def n(self):
        return self.N - 1

    @property
    def k(self):
        return self.N


def diagonal_scalar(N):
    vec = np.zeros(N)
    vec[0] = 4.0
    vec[1] += -1.0
    vec[-1] += -1.0
    return CircScalar(vec)


def build_poisson(N, spike_row=None, spike_tube=2):
    """Assemble ``A ∘ u = f`` with a single spike of ``1/N**2`` in ``f``.

    The spike sits at ``x_{N/2}, y_2`` (1-based ``row = N // 2``, ``tube = 2``),
    which for ``N = 50`` is grid point ``x_25, y_2``.
    """
    if N < 3:
        raise ValueError(f"Poisson system needs N >= 3 (got {N})")
    n = N - 1
    row = N // 2 if spike_row is None else spike_row
    if not (1 <= row <= n and 1 <= spike_tube <= N):
        raise ValueError("spike position outside the grid")
    d = diagonal_scalar(N).vec
    entries = {}
    for i in range(n):
        entries[(i, i)] = d
        if i + 1 < n:
            entries[(i, i + 1)] = {0: -1.0}
            entries[(i + 1, i)] = {0: -1.0}
    A = CircMatrix.from_entries(n, n, N, entries)
    value = 1.0 / N**2
    f = CircMatrix.from_entries(n, 1, N, {(row - 1, 0): {spike_tube - 1: value}})
    return PoissonSystem(N, A, f, (row, spike_tube, value))


def poisson_canonical_eigs(N):
    """Closed-form canonical eigenvalues ``(4 + 2cos(j pi/N), -1, 0, ..., 0, -1)``, j = 1..N-1."""
    if N < 3:
        raise ValueError(f"Poisson system needs N >= 3 (got {N})")
    out = []
    for j in range(1, N):
        vec = diagonal_scalar(N).vec.copy()
        vec[0] = 4.0 + 2.0 * np.cos(j * np.pi / N)
        out.append(CircScalar(vec))
    return out


def slice_shifts(N):
    """``delta_j = 2 cos(-pi + 2 pi (j-1)/N)`` for j = 1..N."""
    j = np.arange(1, N + 1)
    return 2.0 * np.cos(-np.pi + 2.0 * np.pi * (j - 1) / N)


def slice_rates(N):
    """Per-slice power-method ratio ``(gamma_2 + delta_j)/(gamma_1 + delta_j)``.

    Entry ``j - 1`` belongs to Fourier slice ``j``, whose diagonal coefficient
    is ``4 + delta_j``.
    """
    g1 = 4.0 + 2.0 * np.cos(np.pi / N)
    g2 = 4.0 + 2.0 * np.cos(2.0 * np.pi / N)
    delta = slice_shifts(N)
    return (g2 + delta) / (g1 + delta)


def poisson_rates(N):
    """``(fastest, slowest)`` power-method convergence ratios over the slices.

    The extremes are taken over all ``delta_j`` explicitly, which gives the
    closed forms ``(2+2cos(2pi/N))/(2+2cos(pi/N))`` and
    ``(6+2cos(2pi/N))/(6+2cos(pi/N))`` for even ``N``.
    """
    if N < 3:
        raise ValueError(f"Poisson system needs N >= 3 (got {N})")
    ratios = slice_rates(N)
    return float(ratios.min()), float(ratios.max())
