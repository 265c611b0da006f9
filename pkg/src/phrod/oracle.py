"""Closed-form traveling-wave solution of the traction-driven rod.

The velocity and normal force are split as ``v = a(x - ct) + b(x + ct)`` and
``sigma = Z (b - a)`` with impedance ``Z = sqrt(rho EA)``. The fixed end
gives ``a(s) = -b(-s)``, the loaded end ``b(s) = a(2L - s) + tau((s - L)/c) / Z``;
unrolling the recursion sums alternating reflections of the load history.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rod import RodConfig


@dataclass(frozen=True)
class CharacteristicSolution:
    config: RodConfig

    def __post_init__(self):
        if not self.config.dirichlet.is_zero:
            raise ValueError("characteristic oracle requires a zero boundary velocity")
        self.config.neumann.breakpoints()  # rejects non piecewise-constant loads

    @property
    def c(self) -> float:
        return self.config.wave_speed

    @property
    def Z(self) -> float:
        return self.config.impedance

    def _b(self, s) -> np.ndarray:
        L, c = self.config.length, self.c
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        n_refl = int(np.ceil(max(float(s.max(initial=0.0)) - L, 0.0) / (2 * L))) + 1
        for k in range(n_refl):
            shifted = s - 2 * k * L
            active = shifted > L
            load = self.config.neumann((shifted - L) / c)
            out += np.where(active, (-1) ** k * load / self.Z, 0.0)
        return out

    def _a(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return np.where(s < 0.0, -self._b(np.abs(s)), 0.0)

    def response(self, x, t) -> tuple[np.ndarray, np.ndarray]:
        """Velocity and normal force at ``(x, t)`` (broadcast)."""
        x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
        if np.any(t < 0):
            raise ValueError("time must be non-negative")
        a = self._a(x - self.c * t)
        b = self._b(x + self.c * t)
        return a + b, self.Z * (b - a)

    def _space_breaks(self, t: float) -> np.ndarray:
        L, c = self.config.length, self.c
        jumps = [L + c * tb for tb in self.config.neumann.breakpoints()]
        n = int(np.ceil(c * t / (2 * L))) + 2
        pts = [0.0, L]
        for j in jumps:
            for k in range(n):
                s = j + 2 * k * L
                pts += [s - c * t, -s + c * t]
        pts = np.array(pts)
        return np.unique(pts[(pts >= 0.0) & (pts <= L)])

    def _time_breaks(self, t: float) -> np.ndarray:
        L, c = self.config.length, self.c
        pts = [0.0, t] + list(self.config.neumann.breakpoints())
        n = int(np.ceil(c * t / L)) + 2
        for tb in self.config.neumann.breakpoints():
            pts += [tb + k * L / c for k in range(n)]
        pts = np.array(pts)
        return np.unique(pts[(pts >= 0.0) & (pts <= t)])

    def energy(self, t: float) -> float:
        """Stored energy at time ``t``, integrated exactly over the
        piecewise-constant profile."""
        xb = self._space_breaks(t)
        xm = 0.5 * (xb[1:] + xb[:-1])
        v, s = self.response(xm, t)
        dens = 0.5 * (self.config.rho * v**2 + s**2 / self.config.EA)
        return float(np.sum(dens * np.diff(xb)))

    def boundary_work(self, t: float) -> float:
        """Work done by the end load on ``[0, t]``."""
        tb = self._time_breaks(t)
        tm = 0.5 * (tb[1:] + tb[:-1])
        v, _ = self.response(self.config.length, tm)
        return float(np.sum(v * self.config.neumann(tm) * np.diff(tb)))


def exact_rod_response(config: RodConfig, x, t) -> tuple[np.ndarray, np.ndarray]:
    return CharacteristicSolution(config).response(x, t)
