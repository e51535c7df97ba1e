"""System parameters for the two-color pumped cavity model.

All rates and frequencies are expressed in units of the cavity decay rate
kappa, times in 1/kappa.  The particle position x is measured in units of
the mode wavelength (lambda = 1), so trapping sites sit on multiples of
1/2 and the mode-function phase is k*x with k = 2*pi.  Momentum is in
units of hbar*k_photon; the single kinematic constant is the recoil
frequency omega_r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigError, SingularDetuningError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SystemParams:
    """Rates, detunings and pump amplitudes of the driven atom-cavity system.

    Attributes
    ----------
    kappa : cavity field decay rate (the unit; keep at 1).
    gamma : dipole decay rate.
    delta_a : atom detuning omega_L - omega_a.
    delta_c : cavity detuning omega_L - omega_c.
    delta_t : pump beat omega_L - omega_T; sets the jump period pi/delta_t.
    eta_l : longitudinal pump amplitude (through the mirror).
    eta_t : transverse pump amplitude (direct dipole drive).
    g : maximum atom-cavity coupling.
    omega_r : recoil frequency.
    k : mode wave number in inverse wavelengths (2*pi for lambda = 1).
    """

    kappa: float = 1.0
    gamma: float = 1.0
    delta_a: float = -1.5
    delta_c: float = -1.5
    delta_t: float = math.pi / 100.0
    eta_l: float = 1.0
    eta_t: float = 0.55
    g: float = 0.1
    omega_r: float = 0.1
    k: float = TWO_PI

    def __post_init__(self):
        if not self.kappa > 0:
            raise ConfigError("kappa must be > 0")
        if self.gamma < 0:
            raise ConfigError("gamma must be >= 0")
        if self.g < 0:
            raise ConfigError("g must be >= 0")
        if self.eta_l < 0 or self.eta_t < 0:
            raise ConfigError("pump amplitudes must be >= 0")
        if not self.omega_r > 0:
            raise ConfigError("omega_r must be > 0")
        if not self.k > 0:
            raise ConfigError("k must be > 0")

    # -- derived quantities ------------------------------------------------

    @property
    def u0(self) -> float:
        """Per-photon dispersive light shift g^2/delta_a."""
        if self.delta_a == 0.0:
            raise SingularDetuningError("u0 undefined for delta_a = 0")
        return self.g * self.g / self.delta_a

    @property
    def eta_bar_t(self) -> float:
        """Effective transverse pump g*eta_t/delta_a (atom-scattered light)."""
        if self.delta_a == 0.0:
            raise SingularDetuningError("eta_bar_t undefined for delta_a = 0")
        return self.g * self.eta_t / self.delta_a

    @property
    def phi_delta(self) -> float:
        """Phase lag arctan(delta_c/kappa) of the interference force."""
        return math.atan(self.delta_c / self.kappa)

    @property
    def jump_period(self) -> float:
        """Jump period T = pi/delta_t, half the beat period of the drive."""
        if self.delta_t == 0.0:
            raise ConfigError("jump period undefined for delta_t = 0")
        return math.pi / self.delta_t

    def with_period(self, period: float) -> "SystemParams":
        """Return a copy whose beat detuning realizes the given jump period."""
        if not period > 0:
            raise ConfigError("jump period must be > 0")
        return replace(self, delta_t=math.pi / period)

    def detuning_at(self, x: float) -> float:
        """Position dependent cavity detuning delta_c - u0*f(x)^2."""
        f = math.cos(self.k * x)
        return self.delta_c - self.u0 * f * f

    def as_tuple(self) -> tuple:
        """Flat float tuple consumed by the compiled kernels."""
        return (
            self.kappa,
            self.gamma,
            self.delta_a,
            self.delta_c,
            self.delta_t,
            self.eta_l,
            self.eta_t,
            self.g,
            self.omega_r,
            self.k,
        )


def figure_params(period: float | None = None, **overrides) -> SystemParams:
    """Parameter set used throughout the walk studies.

    delta_a = delta_c = -1.5, eta_l = 1, gamma = 1, omega_r = 0.1,
    eta_t = 0.55, k = 2*pi, and g = 0.1 (see README on the choice of g).
    `period` sets delta_t = pi/period; default is the single-trajectory
    value T = 100.
    """
    p = SystemParams()
    if period is not None:
        p = p.with_period(period)
    if overrides:
        p = replace(p, **overrides)
    return p
