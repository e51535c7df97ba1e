"""Closed-form adiabatic layer: eliminated dipole and field, the
three-term optical force decomposition, trapping frequencies, regime
classification and the jump-threshold estimate.

With the dipole eliminated (far off-resonant, weak drive),
    g*beta = i*U0*alpha*f(x) + i*eta_bar_T*exp(i*delta_t*t),
and with the field eliminated as well (quasi-static drive),
    alpha_ss = (eta_l - i*eta_bar_T*f*exp(i*delta_t*t)) / (kappa - i*Delta(x)),
Delta(x) = delta_c - U0*f(x)^2.  Substituting both into the force
F = -2*(df/dx)*Im{conj(alpha)*(g*beta)} and regrouping by pump powers
gives an exact decomposition F = F_L + F_T + F_LT:

    F_L  = -2*f'*f * eta_l^2 * U0 / (kappa^2 + Delta^2)
    F_T  = -2*f'*f * eta_bar_T^2 * delta_c / (kappa^2 + Delta^2)
    F_LT = -2*f' * eta_bar_T*eta_l
           * [kappa*cos(delta_t*t) + (delta_c + U0*f^2)*sin(delta_t*t)]
           / (kappa^2 + Delta^2)

F_L is the standard cos^2 lattice of the longitudinal pump, F_T the
static interference of scattered transverse photons, and F_LT the
cross-pump interference oscillating at delta_t; its sign flip every
pi/delta_t drives the site-to-site walk.  The decomposition is an exact
regrouping of the eliminated-variable force; tests enforce the identity
at the 1e-10 level.  Forces are in units hbar*k_photon*kappa.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularDetuningError
from .params import SystemParams


def _requires_dispersive(params: SystemParams):
    if params.delta_a == 0.0:
        raise SingularDetuningError(
            "adiabatic dipole elimination requires delta_a != 0")


def eliminated_dipole(alpha, x, t, params: SystemParams):
    """Adiabatic dipole g*beta for given field, position and time.

    Valid in the dispersive regime |delta_a| >> gamma, eta_t (caller's
    responsibility).
    """
    _requires_dispersive(params)
    f = np.cos(params.k * np.asarray(x, dtype=float))
    drive = np.exp(1j * params.delta_t * np.asarray(t, dtype=float))
    return 1j * params.u0 * alpha * f + 1j * params.eta_bar_t * drive


def steady_alpha(x, t, params: SystemParams):
    """Quasi-static cavity amplitude with the dipole eliminated.

    Valid for eta_l, eta_bar_t << max(kappa, |delta_c|) and
    delta_t << kappa.
    """
    _requires_dispersive(params)
    f = np.cos(params.k * np.asarray(x, dtype=float))
    drive = np.exp(1j * params.delta_t * np.asarray(t, dtype=float))
    delta_x = params.delta_c - params.u0 * f * f
    return (params.eta_l - 1j * params.eta_bar_t * f * drive) / (
        params.kappa - 1j * delta_x)


def eliminated_force(x, t, params: SystemParams):
    """Force -2*(df/dx)*Im{conj(alpha_ss)*(g*beta)_ss}: the unregrouped
    adiabatic force, used as the oracle for the decomposition."""
    x = np.asarray(x, dtype=float)
    a = steady_alpha(x, t, params)
    gb = eliminated_dipole(a, x, t, params)
    dfdx = -params.k * np.sin(params.k * x)
    return -2.0 * dfdx * np.imag(np.conjugate(a) * gb)


@dataclass(frozen=True)
class ForceBreakdown:
    """The three pump contributions and their sum at one (x, t)."""

    f_l: float
    f_t: float
    f_lt: float
    total: float

    def __post_init__(self):
        expected = self.f_l + self.f_t + self.f_lt
        if not np.isclose(self.total, expected, rtol=0.0, atol=1e-300) \
                and self.total != expected:
            raise ValueError("total must equal f_l + f_t + f_lt")


def force_terms(x, t, params: SystemParams):
    """Vectorized decomposition; returns (f_l, f_t, f_lt) arrays."""
    _requires_dispersive(params)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    u0 = params.u0
    ebt = params.eta_bar_t
    f = np.cos(params.k * x)
    dfdx = -params.k * np.sin(params.k * x)
    f2 = f * f
    delta_x = params.delta_c - u0 * f2
    denom = params.kappa ** 2 + delta_x ** 2
    ct = np.cos(params.delta_t * t)
    st = np.sin(params.delta_t * t)
    f_l = -2.0 * dfdx * f * params.eta_l ** 2 * u0 / denom
    f_t = -2.0 * dfdx * f * ebt ** 2 * params.delta_c / denom
    f_lt = (-2.0 * dfdx * ebt * params.eta_l
            * (params.kappa * ct + (params.delta_c + u0 * f2) * st) / denom)
    return f_l, f_t, f_lt


def force_breakdown(x: float, t: float, params: SystemParams) -> ForceBreakdown:
    """Scalar force decomposition at one position and time."""
    f_l, f_t, f_lt = force_terms(x, t, params)
    f_l, f_t, f_lt = float(f_l), float(f_t), float(f_lt)
    return ForceBreakdown(f_l=f_l, f_t=f_t, f_lt=f_lt,
                          total=f_l + f_t + f_lt)


def force_interference_approx(x, t, params: SystemParams):
    """Interference force in the small-U0 limit, as a phase-shifted cosine:

        F ~= -2*f'(x) * eta_l*eta_bar_T * cos(delta_t*t - phi_Delta)
             / sqrt(kappa^2 + delta_c^2)

    This is the exact U0 -> 0 limit of the F_LT term; the phase lag is
    phi_Delta = arctan(delta_c/kappa).
    """
    _requires_dispersive(params)
    x = np.asarray(x, dtype=float)
    dfdx = -params.k * np.sin(params.k * x)
    amp = params.eta_l * params.eta_bar_t / np.hypot(params.kappa,
                                                     params.delta_c)
    return -2.0 * dfdx * amp * np.cos(params.delta_t * np.asarray(t, float)
                                      - params.phi_delta)


@dataclass(frozen=True)
class TrapSpectrum:
    """Squared trapping frequencies (signed; negative means no trapping).

    omega_sq_lt : interference trap, 4*omega_r*kappa*eta_bar_T*eta_l/(kappa^2+delta_c^2)
    omega_sq_l  : longitudinal trap, 8*omega_r*U0*eta_l^2/(kappa^2+delta_c^2)
    omega_sq_plus/minus : double-well branches
                  8*omega_r*eta_l*(U0*eta_l +- eta)/(kappa^2+delta_c^2)

    The double-well branches use the raw eta_t by default; dimensional
    consistency with F_LT suggests eta_bar_T instead, so a switch is
    exposed (see trap_spectrum).  Frequencies are exposed only where the
    squared value is non-negative.
    """

    omega_sq_lt: float
    omega_sq_l: float
    omega_sq_plus: float
    omega_sq_minus: float

    @staticmethod
    def _freq(sq: float):
        return float(np.sqrt(sq)) if sq >= 0.0 else None

    @property
    def omega_lt(self):
        return self._freq(self.omega_sq_lt)

    @property
    def omega_l(self):
        return self._freq(self.omega_sq_l)

    @property
    def omega_plus(self):
        return self._freq(self.omega_sq_plus)

    @property
    def omega_minus(self):
        return self._freq(self.omega_sq_minus)


def trap_spectrum(params: SystemParams,
                  eta_t_raw_in_doublewell: bool = True) -> TrapSpectrum:
    """Trapping frequencies of the adiabatic potentials (printed forms)."""
    _requires_dispersive(params)
    denom = params.kappa ** 2 + params.delta_c ** 2
    eta = params.eta_t if eta_t_raw_in_doublewell else params.eta_bar_t
    w_lt = 4.0 * params.omega_r * params.kappa * params.eta_bar_t \
        * params.eta_l / denom
    w_l = 8.0 * params.omega_r * params.u0 * params.eta_l ** 2 / denom
    w_p = 8.0 * params.omega_r * params.eta_l \
        * (params.u0 * params.eta_l + eta) / denom
    w_m = 8.0 * params.omega_r * params.eta_l \
        * (params.u0 * params.eta_l - eta) / denom
    return TrapSpectrum(omega_sq_lt=w_lt, omega_sq_l=w_l,
                        omega_sq_plus=w_p, omega_sq_minus=w_m)


def curvature_trap_frequency(params: SystemParams, x0: float = 0.0,
                             dx: float = 1e-6) -> float:
    """Small-oscillation frequency at a site from the implemented force.

    Linearizes d^2x/dt^2 = 2*omega_r*F(x, t*) around x0 at the
    modulation phase t* maximizing the restoring interference force;
    the force gradient is taken by central difference.  Returns the
    real oscillation frequency (0 if the site is not trapping at any
    modulation sign).  This is the quantity a trajectory fit measures,
    as opposed to the printed trap_spectrum formulas.
    """
    if params.eta_t > 0.0 and params.delta_t != 0.0:
        t_candidates = [params.phi_delta / params.delta_t,
                        (params.phi_delta + np.pi) / params.delta_t]
    else:
        t_candidates = [0.0]
    best = 0.0
    for t_star in t_candidates:
        f_plus = np.sum(force_terms(x0 + dx, t_star, params))
        f_minus = np.sum(force_terms(x0 - dx, t_star, params))
        grad = (f_plus - f_minus) / (2.0 * dx)
        omega_sq = -2.0 * params.omega_r * grad
        best = max(best, omega_sq)
    return float(np.sqrt(best)) if best > 0.0 else 0.0


def regime_check(params: SystemParams, n_grid: int = 721) -> str:
    """Classify the trapping regime.

    interference-trapping requires eta_t >> g*eta_l and
    eta_t << |eta_l*delta_a/(g*delta_c)| (factor-10 separations) with
    |U0*delta_c| < 0.1; otherwise the maxima of F_L and F_LT decide
    between longitudinal-trapping and unclassified.
    """
    _requires_dispersive(params)
    big = params.eta_t > 10.0 * params.g * params.eta_l
    if params.g * params.delta_c != 0.0:
        upper = 0.1 * abs(params.eta_l * params.delta_a
                          / (params.g * params.delta_c))
        small = params.eta_t < upper
    else:
        small = True
    dispersive = abs(params.u0 * params.delta_c) < 0.1
    if big and small and dispersive:
        return "interference-trapping"
    xs = np.linspace(0.0, 1.0, n_grid)
    f_l, _, _ = force_terms(xs, 0.0, params)
    max_l = float(np.max(np.abs(f_l)))
    if params.delta_t != 0.0:
        ts = np.linspace(0.0, 2.0 * np.pi / params.delta_t, 61)
    else:
        ts = np.array([0.0])
    _, _, f_lt = force_terms(xs[None, :], ts[:, None], params)
    max_lt = float(np.max(np.abs(f_lt)))
    if max_l > max_lt:
        return "longitudinal-trapping"
    return "unclassified"


def jump_threshold_estimate(params: SystemParams) -> float:
    """Transverse pump amplitude balancing the maxima of F_L and F_LT.

    Closed-form with the U0*f^2 spatial modulation neglected:
    eta_t ~= eta_l*g / (2*sqrt(kappa^2 + delta_c^2)).  A force-balance
    scale only; the onset of jumping in simulations sits far above it.
    """
    return params.eta_l * params.g / (
        2.0 * np.hypot(params.kappa, params.delta_c))
