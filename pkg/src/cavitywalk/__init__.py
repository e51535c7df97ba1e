"""cavitywalk: quasi-random-walk dynamics in a two-color pumped cavity.

Simulation engine and analysis toolkit for a polarizable particle in an
optical cavity driven longitudinally through a mirror and transversally
via the dipole.  The beat between the two drives yields a time-modulated
interference potential that shuttles the particle between lattice sites;
the package integrates the coupled atom-field-motion equations,
evaluates the closed-form adiabatic forces, discretizes trajectories
into lattice jump processes, and quantifies their randomness.  Auxiliary
colored-noise Langevin and kicked-rotor benchmarks mirror the diffusion
diagnostics.
"""

from .backend import active_backend, using_numba
from .dynamics import mode_f, mode_df, rhs_full, rhs_linear, rhs_collective
from .errors import (
    CavityWalkError,
    ConfigError,
    DegenerateSequenceError,
    EmptySubpopulationError,
    IntegrationDivergedError,
    InvalidKernelError,
    InvalidRegimeError,
    QuadratureError,
    SingularDetuningError,
    StatisticsError,
    UndersampledWindowError,
)
from .integrators import IntegrationPlan, integrate, integrate_model, rk4_step
from .params import SystemParams, figure_params
from .state import DynState, Trajectory, initial_state

__version__ = "0.1.0"

__all__ = [
    "CavityWalkError",
    "ConfigError",
    "DegenerateSequenceError",
    "DynState",
    "EmptySubpopulationError",
    "IntegrationDivergedError",
    "IntegrationPlan",
    "InvalidKernelError",
    "InvalidRegimeError",
    "QuadratureError",
    "SingularDetuningError",
    "StatisticsError",
    "SystemParams",
    "Trajectory",
    "UndersampledWindowError",
    "active_backend",
    "figure_params",
    "initial_state",
    "integrate",
    "integrate_model",
    "mode_df",
    "mode_f",
    "rhs_collective",
    "rhs_full",
    "rhs_linear",
    "rk4_step",
    "using_numba",
]
