"""Boundary signals: constant, rectangular pulse and sinusoid."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Kind = Literal["constant", "pulse", "sinusoid"]


@dataclass(frozen=True)
class Signal:
    """Scalar time signal.

    ``pulse`` equals ``amplitude`` for ``0 <= t <= duration`` and zero
    otherwise; ``sinusoid`` is ``amplitude * sin(2 pi frequency t)``.
    """

    kind: Kind = "constant"
    amplitude: float = 0.0
    duration: float = 0.0
    frequency: float = 0.0

    def __post_init__(self):
        if self.kind not in ("constant", "pulse", "sinusoid"):
            raise ValueError(f"unknown signal kind {self.kind!r}")
        if self.kind == "pulse" and not self.duration > 0:
            raise ValueError("pulse duration must be positive")
        if self.kind == "sinusoid" and not self.frequency > 0:
            raise ValueError("sinusoid frequency must be positive")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            out = np.full(t.shape, self.amplitude)
        elif self.kind == "pulse":
            out = np.where((t >= 0.0) & (t <= self.duration), self.amplitude, 0.0)
        else:
            out = self.amplitude * np.sin(2 * np.pi * self.frequency * t)
        return out[()] if out.ndim == 0 else out

    @property
    def is_zero(self) -> bool:
        return self.amplitude == 0.0

    def breakpoints(self) -> tuple[float, ...]:
        """Jump locations (t >= 0) of a piecewise-constant signal."""
        if self.kind == "constant":
            return ()
        if self.kind == "pulse":
            return (0.0, self.duration)
        raise ValueError("sinusoid is not piecewise constant")


ZERO = Signal()
