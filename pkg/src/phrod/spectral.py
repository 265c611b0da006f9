"""Eigenfrequencies of the discretized rod, scaled as ``rho / EA * omega^2``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import lu_factor, sym_generalized_eig
from .rod import AssembledRod

ZERO_RTOL = 1e-10


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray  # scaled, ascending, zero modes first
    zero_modes: int
    exact: np.ndarray  # continuum values for the nonzero entries, NaN for zero modes
    kernel: np.ndarray  # full-system null vectors as columns

    @property
    def abs_error(self) -> np.ndarray:
        return np.abs(self.eigenvalues - self.exact)

    @property
    def rel_error(self) -> np.ndarray:
        return self.abs_error / np.abs(self.exact)

    def rows(self):
        """``(k, computed, exact, abs_err)`` rows, k starting at 1."""
        for k, (lam, ex) in enumerate(zip(self.eigenvalues, self.exact), start=1):
            yield k, lam, ex, abs(lam - ex)


def exact_rod_eigenvalues(length: float, k_max: int) -> np.ndarray:
    """Scaled eigenvalues of the fixed-free continuum rod."""
    if not length > 0:
        raise ValueError("length must be positive")
    k = np.arange(1, k_max + 1)
    return ((2 * k - 1) * np.pi / (2 * length)) ** 2


def squared_frequencies(rod: AssembledRod) -> np.ndarray:
    """``omega^2`` from the pencil ``(K^T M_v^-1 K, M_s)``, ascending."""
    X = lu_factor(rod.M_v).solve(rod.K)
    A = rod.K.T @ X
    A = 0.5 * (A + A.T)
    return sym_generalized_eig(A, rod.M_s).eigenvalues


def rod_spectrum(rod: AssembledRod, k_max: int) -> SpectrumReport:
    """Smallest ``k_max`` scaled eigenvalues of the full system, counting
    zero modes of ``M^-1 J`` as eigenvalue 0."""
    n_v, n_s = rod.n_v, rod.n_s
    if not 1 <= k_max <= n_s + 1:
        raise ValueError(f"k_max must be in [1, {n_s + 1}]")
    w2 = squared_frequencies(rod)
    scale = rod.config.rho / rod.config.EA
    lam = scale * w2
    singular = np.abs(lam) < ZERO_RTOL * np.abs(lam).max()
    rank = n_s - int(singular.sum())
    zero_modes = (n_v - rank) + (n_s - rank)
    positive = np.sort(lam[~singular])
    values = np.concatenate([np.zeros(zero_modes), positive])[:k_max]
    n_zero_shown = min(zero_modes, k_max)
    exact = np.concatenate([
        np.full(n_zero_shown, np.nan),
        exact_rod_eigenvalues(rod.config.length, k_max - n_zero_shown),
    ])
    return SpectrumReport(values, zero_modes, exact, _kernel(rod))


def _kernel(rod: AssembledRod) -> np.ndarray:
    # null space of J; for full-rank K it lives in the velocity block (K^T v = 0)
    _, s, vt = np.linalg.svd(rod.K.T)
    tol = ZERO_RTOL * s.max()
    rank = int((s > tol).sum())
    v_null = vt[rank:].T
    out = np.zeros((rod.n_v + rod.n_s, v_null.shape[1]))
    out[:rod.n_v] = v_null
    return out
