"""Port-Hamiltonian mixed finite element models of an elastic rod with
weakly imposed velocity and traction boundary conditions."""
from .basis import Basis1D, BasisKind, Mesh1D, gauss_rule
from .chain import ChainConfig, build_chain, virtual_power_residuals
from .integrator import MidpointStepper, Trajectory, energy_residual, simulate, step
from .oracle import CharacteristicSolution, exact_rod_response
from .ph_core import (
    BoundaryNormal3D,
    Material3D,
    PHModel,
    elasticity_matrix,
    energy_variables,
    hamiltonian,
    normal_matrix,
    output,
    validate,
)
from .rod import AssembledRod, RodConfig, assemble_rod
from .signals import Signal
from .spectral import SpectrumReport, exact_rod_eigenvalues, rod_spectrum

__version__ = "0.1.0"
