"""Dense linear-algebra kernels: LU with partial pivoting, Cholesky, and a
Jacobi-based symmetric generalized eigensolver.

Matrices are plain ``numpy.ndarray`` objects (row-major, float64). Every
routine is a pure function of its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

_EPS = np.finfo(float).eps


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when a pivot vanishes to working precision."""

    def __init__(self, index: int):
        super().__init__(f"singular matrix: zero pivot at index {index}")
        self.index = index


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """Raised when a Cholesky pivot is non-positive."""

    def __init__(self, index: int, value: float):
        super().__init__(
            f"matrix is not positive definite: pivot {index} is {value:.3e}"
        )
        self.index = index
        self.value = value


def _as_square(A, name="A") -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A


@dataclass(frozen=True)
class LUFactorization:
    """Packed ``P A = L U`` factors; ``L`` has an implicit unit diagonal."""

    lu: np.ndarray
    perm: np.ndarray

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    def solve(self, B) -> np.ndarray:
        B = np.asarray(B, dtype=float)
        if B.shape[0] != self.n:
            raise ValueError(
                f"right-hand side has {B.shape[0]} rows, expected {self.n}"
            )
        y = solve_triangular(
            self.lu, B[self.perm], lower=True, unit_diagonal=True, check_finite=False
        )
        return solve_triangular(self.lu, y, lower=False, check_finite=False)


def lu_factor(A) -> LUFactorization:
    """Factor ``A`` with partial (row) pivoting.

    Raises
    ------
    SingularMatrixError
        If the largest available pivot in some column is below
        ``n * eps * ||A||_inf``.
    """
    A = _as_square(A)
    n = A.shape[0]
    lu = A.copy()
    perm = np.arange(n)
    tol = n * _EPS * max(np.abs(A).sum(axis=1).max(initial=0.0), np.finfo(float).tiny)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= tol:
            raise SingularMatrixError(k)
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LUFactorization(lu, perm)


def lu_factor_solve(A, B) -> np.ndarray:
    """Solve ``A X = B`` for a vector or a block of right-hand sides."""
    return lu_factor(A).solve(B)


def cholesky(A, rtol: float = 1e-12) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == A``."""
    A = _as_square(A)
    scale = max(np.abs(A).max(initial=0.0), np.finfo(float).tiny)
    if np.abs(A - A.T).max(initial=0.0) > rtol * scale:
        raise ValueError("matrix is not symmetric")
    n = A.shape[0]
    L = np.zeros_like(A)
    for j in range(n):
        d = A[j, j] - L[j, :j] @ L[j, :j]
        if not d > 0.0:
            raise NotPositiveDefiniteError(j, float(d))
        L[j, j] = np.sqrt(d)
        L[j + 1:, j] = (A[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # column k pairs with eigenvalue k


def _round_robin(n: int) -> list[np.ndarray]:
    """Orderings of ``range(n)`` whose adjacent slots ``(0,1), (2,3), ...``
    form rounds of disjoint pairs; over all rounds every pair meets once."""
    m = n + (n % 2)
    players = list(range(m))
    orders = []
    for _ in range(m - 1):
        order = []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                order += [min(a, b), max(a, b)]
        # a bye (odd n) goes last, outside the paired slots
        order += [k for k in range(n) if k not in set(order)]
        orders.append(np.array(order, dtype=int))
        players = [players[0], players[-1]] + players[1:-1]
    return orders


def jacobi_eigh(A, tol: float = 1e-13, max_sweeps: int = 100) -> EigenResult:
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs (round-robin ordering) so a whole round is applied as one
    vectorized rotation. Iterates until the off-diagonal Frobenius norm is
    below ``tol * ||A||_F``.
    """
    A = _as_square(A)
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    target = tol * np.linalg.norm(A)
    if n == 1:
        return EigenResult(np.diag(A).copy(), np.eye(1))
    orders = _round_robin(n)
    m2 = 2 * (n // 2)
    # W is A permuted into the current ordering; V's columns follow it
    current = orders[0]
    W = A[np.ix_(current, current)].copy()
    V = np.eye(n)[:, current]

    def off_norm():
        return np.linalg.norm(W - np.diag(np.diag(W)))

    for sweep in range(max_sweeps + 1):
        if off_norm() <= target:
            break
        if sweep == max_sweeps:
            raise np.linalg.LinAlgError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps"
            )
        for order in orders:
            if order is not current:
                inv = np.empty(n, dtype=int)
                inv[current] = np.arange(n)
                r = inv[order]
                W = W[np.ix_(r, r)]
                V = V[:, r]
                current = order
            ev, od = slice(0, m2, 2), slice(1, m2, 2)
            idx = np.arange(0, m2, 2)
            app, aqq, apq = W[idx, idx], W[idx + 1, idx + 1], W[idx, idx + 1]
            # entries below the relative-accuracy floor are dropped outright
            tiny = np.abs(apq) <= _EPS * np.sqrt(np.abs(app * aqq))
            apq = np.where(tiny, 0.0, apq)
            if not apq.any():
                W[idx, idx + 1] = 0.0
                W[idx + 1, idx] = 0.0
                continue
            d = aqq - app
            sd = np.where(d < 0.0, -1.0, 1.0)
            denom = np.abs(d) + np.hypot(d, 2.0 * apq)
            t = np.divide(2.0 * apq * sd, denom, out=np.zeros_like(d), where=denom > 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            P, Q = W[:, ev].copy(), W[:, od].copy()
            W[:, ev] = c * P - s * Q
            W[:, od] = s * P + c * Q
            P, Q = W[ev, :].copy(), W[od, :].copy()
            W[ev, :] = c[:, None] * P - s[:, None] * Q
            W[od, :] = s[:, None] * P + c[:, None] * Q
            P, Q = V[:, ev].copy(), V[:, od].copy()
            V[:, ev] = c * P - s * Q
            V[:, od] = s * P + c * Q
            W[idx, idx + 1] = 0.0
            W[idx + 1, idx] = 0.0
    w = np.diag(W).copy()
    order = np.argsort(w, kind="stable")
    return EigenResult(w[order], V[:, order])


def sym_generalized_eig(A, B) -> EigenResult:
    """Solve ``A v = lambda B v`` for symmetric ``A`` and SPD ``B``.

    The pencil is reduced to ``C = L^-1 A L^-T`` with ``B = L L^T``; the
    returned eigenvectors are ``B``-orthonormal.
    """
    A = _as_square(A)
    B = _as_square(B, "B")
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: A {A.shape}, B {B.shape}")
    L = cholesky(B)
    X = solve_triangular(L, A, lower=True)
    C = solve_triangular(L, X.T, lower=True)
    res = jacobi_eigh(C)
    vecs = solve_triangular(L.T, res.eigenvectors, lower=False)
    return EigenResult(res.eigenvalues, vecs)
