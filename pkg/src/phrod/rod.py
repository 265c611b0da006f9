"""Mixed finite element assembly of the 1D rod with a weakly imposed
velocity condition at ``x = 0`` and a traction condition at ``x = L``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import Basis1D, BasisKind, Mesh1D, gauss_rule
from .ph_core import PHModel
from .signals import ZERO, Signal


@dataclass(frozen=True)
class RodConfig:
    """Rod parameters in SI units.

    ``rho`` is the linear density (kg/m), ``E`` Young's modulus (N/m^2),
    ``A`` the cross section (m^2). ``dirichlet`` prescribes the velocity at
    ``x = 0``, ``neumann`` the normal force at ``x = L``.
    """

    length: float = 1.0
    rho: float = 0.785
    E: float = 2.0e11
    A: float = 1.0e-4
    n_elements: int = 100
    dirichlet: Signal = ZERO
    neumann: Signal = field(default_factory=lambda: Signal("pulse", 1000.0, 0.5e-3))

    def __post_init__(self):
        for name in ("length", "rho", "E", "A"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"rod parameter {name} must be positive, got {value}")
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError(f"n_elements must be a positive integer, got {self.n_elements}")
        if not np.isfinite(self.EA):
            raise ValueError("EA is not finite")

    @property
    def EA(self) -> float:
        return self.E * self.A

    @property
    def wave_speed(self) -> float:
        return float(np.sqrt(self.EA / self.rho))

    @property
    def impedance(self) -> float:
        return float(np.sqrt(self.EA * self.rho))

    def mesh(self) -> Mesh1D:
        return Mesh1D(self.length, self.n_elements)

    def inputs(self, t) -> np.ndarray:
        """Input vector ``(tau, nu)`` at time ``t``."""
        return np.array([self.neumann(t), self.dirichlet(t)], dtype=float)


@dataclass(frozen=True)
class AssembledRod:
    config: RodConfig
    mesh: Mesh1D
    velocity_basis: Basis1D
    stress_basis: Basis1D
    M_v: np.ndarray
    M_s: np.ndarray
    K: np.ndarray
    G_v: np.ndarray
    G_s: np.ndarray
    model: PHModel

    @property
    def n_v(self) -> int:
        return self.velocity_basis.dof_count

    @property
    def n_s(self) -> int:
        return self.stress_basis.dof_count

    # dof indices of the boundary traces
    @property
    def v_left(self) -> int:
        return 0

    @property
    def v_right(self) -> int:
        return self.n_v - 1

    @property
    def s_left(self) -> int:
        return 0

    @property
    def s_right(self) -> int:
        return self.n_s - 1


def assemble_rod(config: RodConfig, mesh: Mesh1D | None = None, *,
                 quadrature_order: int = 3, boundary_correction: bool = True) -> AssembledRod:
    """Build the mass, coupling and input matrices of the rod.

    ``boundary_correction=False`` drops the weak Dirichlet term from ``K``,
    leaving the plain volume integral (used to check integration by parts).
    """
    mesh = config.mesh() if mesh is None else mesh
    if mesh.n_elements != config.n_elements or not np.isclose(mesh.length, config.length, rtol=1e-14):
        raise ValueError(
            f"mesh ({mesh.length} m, {mesh.n_elements} el.) does not match config "
            f"({config.length} m, {config.n_elements} el.)"
        )
    V = Basis1D(mesh, BasisKind.P2_CONTINUOUS)
    S = Basis1D(mesh, BasisKind.P1_DISCONTINUOUS)
    h = mesh.h
    pts, wts = gauss_rule(quadrature_order)

    # identical on every element of a uniform mesh
    phi, dphi = V.shape_eval(0, pts)
    psi, _ = S.shape_eval(0, pts)
    me_v = config.rho * h * np.einsum("q,qi,qj->ij", wts, phi, phi)
    me_s = h / config.EA * np.einsum("q,qi,qj->ij", wts, psi, psi)
    ke = h * np.einsum("q,qi,qj->ij", wts, dphi, psi)

    M_v = np.zeros((V.dof_count, V.dof_count))
    M_s = np.zeros((S.dof_count, S.dof_count))
    K = np.zeros((V.dof_count, S.dof_count))
    for e in range(mesh.n_elements):
        dv, ds = V.element_dofs(e), S.element_dofs(e)
        M_v[np.ix_(dv, dv)] += me_v
        M_s[np.ix_(ds, ds)] += me_s
        K[np.ix_(dv, ds)] += ke

    # Traces at the boundary points: phi and psi are nodal, and n(0) = -1.
    G_v = np.zeros((V.dof_count, 1))
    G_v[-1, 0] = 1.0
    G_s = np.zeros((S.dof_count, 1))
    G_s[0, 0] = -1.0
    if boundary_correction:
        # -phi(0) * n(0) * psi(0)
        K[0, 0] += 1.0

    model = PHModel.from_blocks(
        M_v, M_s, K, G_v, G_s,
        params={"rho": config.rho, "EA": config.EA, "length": config.length},
    )
    return AssembledRod(config, mesh, V, S, M_v, M_s, K, G_v, G_s, model)
