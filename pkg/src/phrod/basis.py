"""Uniform 1D mesh, element shape functions and Gauss rules on [0, 1]."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


@dataclass(frozen=True)
class Mesh1D:
    length: float
    n_elements: int

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError(f"mesh length must be positive, got {self.length}")
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError(f"n_elements must be a positive integer, got {self.n_elements}")

    @property
    def h(self) -> float:
        return self.length / self.n_elements

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.n_elements + 1)

    def element_of(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Element index and reference coordinate for physical points ``x``."""
        x = np.asarray(x, dtype=float)
        s = x / self.h
        e = np.clip(np.floor(s).astype(int), 0, self.n_elements - 1)
        return e, s - e


class BasisKind(str, Enum):
    P2_CONTINUOUS = "P2"
    P1_DISCONTINUOUS = "dP1"


@dataclass(frozen=True)
class Basis1D:
    """Nodal Lagrange basis on a :class:`Mesh1D`.

    ``P2`` dofs are numbered left to right (vertices and midpoints
    interleaved), so element ``e`` owns dofs ``2e, 2e+1, 2e+2``. ``dP1`` dofs
    are the two endpoint values of each element: ``2e, 2e+1``.
    """

    mesh: Mesh1D
    kind: BasisKind

    @property
    def local_size(self) -> int:
        return 3 if self.kind is BasisKind.P2_CONTINUOUS else 2

    @property
    def dof_count(self) -> int:
        n = self.mesh.n_elements
        return 2 * n + 1 if self.kind is BasisKind.P2_CONTINUOUS else 2 * n

    def element_dofs(self, element: int) -> np.ndarray:
        self._check_element(element)
        return 2 * element + np.arange(self.local_size)

    @property
    def connectivity(self) -> np.ndarray:
        return 2 * np.arange(self.mesh.n_elements)[:, None] + np.arange(self.local_size)

    def _check_element(self, element):
        if not 0 <= element < self.mesh.n_elements:
            raise IndexError(
                f"element {element} out of range [0, {self.mesh.n_elements})"
            )

    def shape_eval(self, element: int, xi) -> tuple[np.ndarray, np.ndarray]:
        """Values and physical x-derivatives of the local shape functions.

        ``xi`` may be a scalar or an array of reference coordinates; the
        returned arrays have the local function index on the last axis.
        """
        self._check_element(element)
        xi = np.asarray(xi, dtype=float)
        if np.any((xi < 0.0) | (xi > 1.0)):
            raise ValueError("reference coordinate must lie in [0, 1]")
        h = self.mesh.h
        if self.kind is BasisKind.P2_CONTINUOUS:
            vals = np.stack([(1 - xi) * (1 - 2 * xi), 4 * xi * (1 - xi), xi * (2 * xi - 1)], axis=-1)
            ders = np.stack([4 * xi - 3, 4 - 8 * xi, 4 * xi - 1], axis=-1) / h
        else:
            vals = np.stack([1 - xi, xi], axis=-1)
            ders = np.stack([-np.ones_like(xi), np.ones_like(xi)], axis=-1) / h
        return vals, ders

    def evaluate(self, coeffs, x) -> np.ndarray:
        """Evaluate the field ``sum_i coeffs[i] * basis_i(x)``.

        At interior element interfaces of the ``dP1`` space the value from
        the right-hand element is returned (the left one at ``x = L``).
        """
        coeffs = np.asarray(coeffs, dtype=float)
        e, xi = self.mesh.element_of(x)
        out = np.zeros(np.shape(xi))
        for k in range(self.local_size):
            if self.kind is BasisKind.P2_CONTINUOUS:
                phi = [(1 - xi) * (1 - 2 * xi), 4 * xi * (1 - xi), xi * (2 * xi - 1)][k]
            else:
                phi = [1 - xi, xi][k]
            out = out + coeffs[..., 2 * e + k] * phi
        return out


_GAUSS_ORDERS = (1, 2, 3, 4)


def gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre points and weights mapped to [0, 1]."""
    if order not in _GAUSS_ORDERS:
        raise ValueError(f"unsupported Gauss order {order}; choose from {_GAUSS_ORDERS}")
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w
