"""Spring-mass chain with a prescribed velocity at the left terminal and a
prescribed force at the right one."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ph_core import PHModel
from .signals import ZERO, Signal


@dataclass(frozen=True)
class ChainConfig:
    """``N`` springs and ``N`` moving masses.

    Spring ``i`` connects node ``i - 1`` and node ``i``; node 0 is the
    velocity-driven terminal and carries no mass.
    """

    masses: tuple[float, ...]
    stiffnesses: tuple[float, ...]
    dirichlet: Signal = ZERO
    neumann: Signal = ZERO

    def __post_init__(self):
        object.__setattr__(self, "masses", tuple(float(m) for m in self.masses))
        object.__setattr__(self, "stiffnesses", tuple(float(c) for c in self.stiffnesses))
        if len(self.masses) < 1:
            raise ValueError("chain needs at least one spring")
        if len(self.masses) != len(self.stiffnesses):
            raise ValueError("masses and stiffnesses must have equal length")
        if min(self.masses) <= 0 or min(self.stiffnesses) <= 0:
            raise ValueError("masses and stiffnesses must be positive")

    @classmethod
    def uniform(cls, N: int, mass: float = 1.0, stiffness: float = 1.0, **kw) -> "ChainConfig":
        return cls((mass,) * N, (stiffness,) * N, **kw)

    @property
    def N(self) -> int:
        return len(self.masses)

    def inputs(self, t) -> np.ndarray:
        return np.array([self.neumann(t), self.dirichlet(t)], dtype=float)


def difference_matrix(N: int) -> np.ndarray:
    """Coupling ``K_c`` with ``(K_c F)_i = F_i - F_i+1`` (``F_N+1`` excluded)."""
    return np.eye(N) - np.eye(N, k=1)


def build_chain(config: ChainConfig) -> PHModel:
    """PH model with state ``(v_1..v_N, F_1..F_N)`` and input ``(tau, nu)``."""
    N = config.N
    M_v = np.diag(config.masses)
    M_F = np.diag(1.0 / np.asarray(config.stiffnesses))
    G_v = np.zeros((N, 1))
    G_v[-1, 0] = 1.0
    G_F = np.zeros((N, 1))
    G_F[0, 0] = -1.0
    return PHModel.from_blocks(
        M_v, M_F, difference_matrix(N), G_v, G_F, state_labels=("v", "F"),
    )


def chain_energy(config: ChainConfig, p, dq) -> float:
    """Kinetic plus spring energy in momenta and elongations."""
    m = np.asarray(config.masses)
    c = np.asarray(config.stiffnesses)
    return float(np.sum(np.asarray(p) ** 2 / (2 * m)) + np.sum(0.5 * c * np.asarray(dq) ** 2))


def virtual_power_residuals(config: ChainConfig, e, e_dot, u) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of the velocity and force variations.

    Returns ``(r_v, r_F)`` with ``r_v[i] = p_i' + F_i - F_i+1`` (``F_N+1 = tau``)
    and ``r_F[i] = dq_i' - v_i + v_i-1`` (``v_0 = nu``). Both vanish exactly
    on solutions of the chain dynamics.
    """
    N = config.N
    e, e_dot = np.asarray(e, dtype=float), np.asarray(e_dot, dtype=float)
    tau, nu = np.asarray(u, dtype=float).reshape(2)
    v, F = e[:N], e[N:]
    v_dot, F_dot = e_dot[:N], e_dot[N:]
    r_v = np.empty(N)
    r_F = np.empty(N)
    for i in range(N):
        p_dot = config.masses[i] * v_dot[i]
        F_next = tau if i == N - 1 else F[i + 1]
        r_v[i] = p_dot + F[i] - F_next
        dq_dot = F_dot[i] / config.stiffnesses[i]
        v_prev = nu if i == 0 else v[i - 1]
        r_F[i] = dq_dot - v[i] + v_prev
    return r_v, r_F
