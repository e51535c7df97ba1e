"""Exception hierarchy for the cavitywalk package."""


class CavityWalkError(Exception):
    """Base class for all package errors."""


class ConfigError(CavityWalkError):
    """Invalid, inconsistent or incomplete run configuration."""

    exit_code = 2


class IntegrationDivergedError(CavityWalkError):
    """A right-hand side evaluated to a non-finite value.

    Carries the time at which the problem was detected and, for ensemble
    runs, the index and seed of the offending trajectory.
    """

    exit_code = 3

    def __init__(self, t, traj_index=None, seed=None):
        self.t = t
        self.traj_index = traj_index
        self.seed = seed
        msg = f"integration diverged at t={t:g}"
        if traj_index is not None:
            msg += f" (trajectory {traj_index}, seed {seed})"
        super().__init__(msg)


class StatisticsError(CavityWalkError):
    """Base class for analysis-layer errors."""

    exit_code = 4


class UndersampledWindowError(StatisticsError):
    """A discretization window contains too few trajectory samples."""


class DegenerateSequenceError(StatisticsError):
    """Autocorrelation requested for a zero-variance jump sequence."""


class EmptySubpopulationError(StatisticsError):
    """Mixing report requested but one initial-sign subpopulation is empty."""


class SingularDetuningError(CavityWalkError):
    """Adiabatic elimination with delta_a = 0."""

    exit_code = 2


class InvalidRegimeError(CavityWalkError):
    """Parameter combination outside the validity region of a formula."""

    exit_code = 2


class InvalidKernelError(CavityWalkError):
    """Noise kernel whose implied spectral density is negative."""

    exit_code = 2


class QuadratureError(CavityWalkError):
    """Numerical quadrature failed to reach the requested tolerance."""

    exit_code = 4
