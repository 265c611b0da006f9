"""Implicit midpoint integration of ``M e' = J e + G u`` and the energy
residual bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import LUFactorization, lu_factor
from .ph_core import PHModel, hamiltonian


class NonFiniteStateError(FloatingPointError):
    def __init__(self, step: int):
        super().__init__(f"non-finite state encountered at step {step}")
        self.step = step


class MidpointStepper:
    """Implicit midpoint map for a fixed model and step size.

    The matrix ``M - dt/2 J`` is factored once on construction and reused
    for every step.
    """

    def __init__(self, model: PHModel, dt: float):
        if dt == 0 or not np.isfinite(dt):
            raise ValueError(f"invalid step size {dt}")
        self.model = model
        self.dt = float(dt)
        half = 0.5 * self.dt * model.J
        self._explicit = model.M + half
        self._lu: LUFactorization = lu_factor(model.M - half)
        self._G = self.dt * model.G

    def step(self, e, u_mid) -> np.ndarray:
        e = np.asarray(e, dtype=float)
        u_mid = np.asarray(u_mid, dtype=float).reshape(-1)
        if e.shape != (self.model.n_state,) or u_mid.shape != (self.model.n_input,):
            raise ValueError(
                f"expected state ({self.model.n_state},) and input ({self.model.n_input},), "
                f"got {e.shape} and {u_mid.shape}"
            )
        return self._lu.solve(self._explicit @ e + self._G @ u_mid)


def step(model: PHModel, e_n, u_mid, dt: float) -> np.ndarray:
    """Single implicit midpoint step; ``u_mid`` is sampled at ``t_n + dt/2``."""
    return MidpointStepper(model, dt).step(e_n, u_mid)


@dataclass(frozen=True)
class Trajectory:
    """Sampled simulation result.

    ``states``, ``hamiltonians``, ``work`` and ``residuals`` are indexed by
    time point (``n_steps + 1`` rows). ``inputs`` and ``outputs`` belong to
    the intervals ``[t_k, t_k+1]``: inputs are sampled at the interval
    midpoint and outputs evaluated on the midpoint state (``n_steps`` rows).
    """

    dt: float
    times: np.ndarray
    states: np.ndarray
    inputs: np.ndarray
    outputs: np.ndarray
    hamiltonians: np.ndarray
    work: np.ndarray

    @property
    def residuals(self) -> np.ndarray:
        return energy_residual(self)

    @property
    def n_steps(self) -> int:
        return len(self.times) - 1

    def step_power_defects(self) -> np.ndarray:
        """``H_k+1 - H_k - dt * y_mid . u_mid`` for every step."""
        supplied = self.dt * np.einsum("ki,ki->k", self.outputs, self.inputs)
        return np.diff(self.hamiltonians) - supplied


def simulate(model: PHModel, u: Callable[[float], np.ndarray], e0, dt: float,
             t_final: float) -> Trajectory:
    """Integrate from ``e0`` over ``[0, t_final]`` with constant step ``dt``.

    ``u(t)`` returns the input vector; it is only evaluated at interval
    midpoints ``t_n + dt/2``.
    """
    if not dt > 0:
        raise ValueError(f"step size must be positive, got {dt}")
    ratio = t_final / dt
    n_steps = int(round(ratio))
    if n_steps < 1 or abs(ratio - n_steps) > 1e-9 * ratio:
        raise ValueError(f"t_final={t_final} is not a multiple of dt={dt}")
    stepper = MidpointStepper(model, dt)
    e = np.asarray(e0, dtype=float).copy()
    if e.shape != (model.n_state,):
        raise ValueError(f"initial state has shape {e.shape}, expected ({model.n_state},)")

    times = dt * np.arange(n_steps + 1)
    states = np.empty((n_steps + 1, model.n_state))
    inputs = np.empty((n_steps, model.n_input))
    outputs = np.empty((n_steps, model.n_input))
    states[0] = e
    for k in range(n_steps):
        u_mid = np.asarray(u(times[k] + 0.5 * dt), dtype=float).reshape(-1)
        e_next = stepper.step(e, u_mid)
        if not np.all(np.isfinite(e_next)):
            raise NonFiniteStateError(k)
        inputs[k] = u_mid
        outputs[k] = 0.5 * (e + e_next) @ model.G
        states[k + 1] = e_next
        e = e_next

    H = hamiltonian(model, states)
    W = np.concatenate([[0.0], np.cumsum(dt * np.einsum("ki,ki->k", outputs, inputs))])
    return Trajectory(dt, times, states, inputs, outputs, H, W)


def energy_residual(trajectory: Trajectory) -> np.ndarray:
    """Stored energy minus supplied boundary work at every time point."""
    return trajectory.hamiltonians - trajectory.work
