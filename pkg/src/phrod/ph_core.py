"""Explicit port-Hamiltonian models ``M e' = J e + G u``, ``y = G^T e``,
plus the 3D linear-elastic material and boundary-normal matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .numerics import NotPositiveDefiniteError, cholesky


@dataclass(frozen=True)
class PHModel:
    """Linear lossless PH system in co-energy form.

    ``state_blocks`` and ``input_blocks`` are ``(label, size)`` pairs naming
    the partitions of the state and input vectors. ``params`` carries
    physical metadata used by :func:`energy_variables` (``rho``, ``EA``).
    """

    M: np.ndarray
    J: np.ndarray
    G: np.ndarray
    state_blocks: tuple[tuple[str, int], ...] = ()
    input_blocks: tuple[tuple[str, int], ...] = ()
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        n = self.M.shape[0]
        if self.M.shape != (n, n) or self.J.shape != (n, n):
            raise ValueError(f"M {self.M.shape} and J {self.J.shape} must be square and equal")
        if self.G.ndim != 2 or self.G.shape[0] != n:
            raise ValueError(f"G must have {n} rows, got shape {self.G.shape}")
        if self.state_blocks and sum(s for _, s in self.state_blocks) != n:
            raise ValueError("state block sizes do not add up to the state dimension")
        if self.input_blocks and sum(s for _, s in self.input_blocks) != self.G.shape[1]:
            raise ValueError("input block sizes do not add up to the input dimension")

    @classmethod
    def from_blocks(cls, M_v, M_s, K, G_v, G_s, *, state_labels=("v", "sigma"),
                    input_labels=("tau", "nu"), params=None) -> "PHModel":
        """Assemble ``M = diag(M_v, M_s)``, ``J = [[0, -K], [K^T, 0]]`` and
        ``G = diag(G_v, G_s)``. ``J`` is skew-symmetric by construction."""
        K = np.asarray(K, dtype=float)
        nv, ns = K.shape
        G_v = np.asarray(G_v, dtype=float).reshape(nv, -1)
        G_s = np.asarray(G_s, dtype=float).reshape(ns, -1)
        mv, ms = G_v.shape[1], G_s.shape[1]
        M = np.zeros((nv + ns, nv + ns))
        M[:nv, :nv] = M_v
        M[nv:, nv:] = M_s
        J = np.zeros_like(M)
        J[:nv, nv:] = -K
        J[nv:, :nv] = K.T
        G = np.zeros((nv + ns, mv + ms))
        G[:nv, :mv] = G_v
        G[nv:, mv:] = G_s
        return cls(
            M, J, G,
            state_blocks=((state_labels[0], nv), (state_labels[1], ns)),
            input_blocks=((input_labels[0], mv), (input_labels[1], ms)),
            params=dict(params or {}),
        )

    @property
    def n_state(self) -> int:
        return self.M.shape[0]

    @property
    def n_input(self) -> int:
        return self.G.shape[1]

    def block(self, e, label: str) -> np.ndarray:
        """Slice of state vector(s) ``e`` (last axis) belonging to ``label``."""
        start = 0
        for name, size in self.state_blocks:
            if name == label:
                return np.asarray(e)[..., start:start + size]
            start += size
        raise KeyError(label)

    def rhs(self, e, u) -> np.ndarray:
        return self.J @ e + self.G @ u


def _check_state(model: PHModel, e) -> np.ndarray:
    e = np.asarray(e, dtype=float)
    if e.shape[-1] != model.n_state:
        raise ValueError(f"state has length {e.shape[-1]}, model expects {model.n_state}")
    return e


def hamiltonian(model: PHModel, e) -> float | np.ndarray:
    """Stored energy ``0.5 e^T M e``; vectorized over leading axes of ``e``."""
    e = _check_state(model, e)
    return 0.5 * np.einsum("...i,ij,...j->...", e, model.M, e)


def output(model: PHModel, e) -> np.ndarray:
    """Power-conjugated output ``G^T e``."""
    e = _check_state(model, e)
    return e @ model.G


def energy_variables(model: PHModel, e) -> tuple[np.ndarray, np.ndarray]:
    """Per-dof momentum density ``rho * v`` and strain ``sigma / EA``."""
    try:
        rho, EA = model.params["rho"], model.params["EA"]
    except KeyError:
        raise ValueError("model carries no rod metadata (rho, EA)") from None
    e = _check_state(model, e)
    v, s = np.split(e, [model.state_blocks[0][1]], axis=-1)
    return rho * v, s / EA


def co_energy_variables(model: PHModel, p, eps) -> np.ndarray:
    """Inverse of :func:`energy_variables`."""
    try:
        rho, EA = model.params["rho"], model.params["EA"]
    except KeyError:
        raise ValueError("model carries no rod metadata (rho, EA)") from None
    return np.concatenate([np.asarray(p) / rho, np.asarray(eps) * EA], axis=-1)


@dataclass(frozen=True)
class ValidationReport:
    skew_defect: float
    mass_symmetry_defect: float
    mass_min_pivot: float | None  # None when Cholesky failed
    dimensions_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.skew_defect == 0.0
            and self.mass_symmetry_defect <= 1e-12
            and self.mass_min_pivot is not None
            and self.dimensions_ok
        )

    def lines(self) -> list[str]:
        pivot = "FAILED" if self.mass_min_pivot is None else f"{self.mass_min_pivot:.6e}"
        return [
            f"skew defect max|J + J^T|      : {self.skew_defect:.6e}",
            f"mass symmetry defect (rel.)   : {self.mass_symmetry_defect:.6e}",
            f"mass Cholesky min pivot       : {pivot}",
            f"dimensions consistent         : {self.dimensions_ok}",
            f"status                        : {'OK' if self.ok else 'FAIL'}",
        ]


def validate(model: PHModel) -> ValidationReport:
    M, J, G = model.M, model.J, model.G
    n = M.shape[0]
    dims = M.shape == (n, n) and J.shape == (n, n) and G.shape[0] == n
    skew = float(np.abs(J + J.T).max(initial=0.0))
    scale = max(float(np.abs(M).max(initial=0.0)), np.finfo(float).tiny)
    sym = float(np.abs(M - M.T).max(initial=0.0)) / scale
    try:
        pivot = float(np.diag(cholesky(0.5 * (M + M.T))).min(initial=np.inf))
    except (NotPositiveDefiniteError, ValueError):
        pivot = None
    return ValidationReport(skew, sym, pivot, dims)


# --- 3D linear elasticity (Voigt order 11, 22, 33, 12, 23, 13) -------------

def elasticity_matrix(lam: float, shear: float) -> np.ndarray:
    """Isotropic Hooke matrix in Voigt notation from the Lame coefficients."""
    if not shear > 0:
        raise ValueError("shear modulus must be positive")
    E = np.zeros((6, 6))
    E[:3, :3] = lam
    E[:3, :3] += 2 * shear * np.eye(3)
    E[3:, 3:] = shear * np.eye(3)
    return E


def differential_symbol(k) -> np.ndarray:
    """6x3 strain operator with each partial derivative replaced by ``k_i``."""
    k1, k2, k3 = np.asarray(k, dtype=float)
    return np.array([
        [k1, 0, 0],
        [0, k2, 0],
        [0, 0, k3],
        [k2, k1, 0],
        [0, k3, k2],
        [k3, 0, k1],
    ])


def normal_matrix(n) -> np.ndarray:
    """3x6 traction operator ``N^T`` mapping a Voigt stress to ``sigma . n``."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ValueError(f"normal must be a unit 3-vector, got {n}")
    n1, n2, n3 = n
    return np.array([
        [n1, 0, 0, n2, 0, n3],
        [0, n2, 0, n1, n3, 0],
        [0, 0, n3, 0, n2, n1],
    ])


@dataclass(frozen=True)
class Material3D:
    lam: float
    shear: float
    rho: float

    @property
    def E_voigt(self) -> np.ndarray:
        return elasticity_matrix(self.lam, self.shear)

    @property
    def positive_definite(self) -> bool:
        return self.shear > 0 and 3 * self.lam + 2 * self.shear > 0


@dataclass(frozen=True)
class BoundaryNormal3D:
    n: tuple[float, float, float]

    @property
    def N_T(self) -> np.ndarray:
        return normal_matrix(self.n)
