"""Equations of motion for the driven atom-cavity system.

Three model variants share the cavity equation
    d(alpha)/dt = (-kappa + i*delta_c)*alpha - g*f(x)*beta + eta_l
and the particle motion
    dx/dt = 2*omega_r*p
    dp/dt = -2*g*(df/dx)*Im{conj(alpha)*beta}
with mode function f(x) = cos(k*x) and its spatial gradient
df/dx = -k*sin(k*x).  They differ in the dipole sector:

full       d(beta)/dt   = (-gamma + i*delta_a)*beta - g*f*alpha*beta_z
                          - eta_t*beta_z*exp(i*delta_t*t)
           d(beta_z)/dt = -2*gamma*(beta_z + 1) - 4*g*f*Re{conj(beta)*alpha}
                          - 4*eta_t*Re{conj(beta)*exp(i*delta_t*t)}
linear     the full dipole equation with beta_z frozen at -1
collective beta read as the collective dipole of N emitters:
           d(beta)/dt = (-gamma + i*delta_a)*beta + g*N*f*alpha
                        + N*eta_t*exp(i*delta_t*t)

These are the plain reference implementations operating on DynState;
the compiled batch kernels in _kernels_* evaluate the same expressions.
All functions are pure.
"""

from __future__ import annotations

import cmath
import math

from .params import SystemParams
from .state import DynState

MODELS = ("linear", "full", "collective")


def mode_f(phase: float) -> float:
    """Mode function at the given phase k*x: cos(phase)."""
    return math.cos(phase)


def mode_df(phase: float) -> float:
    """Phase derivative of the mode function: -sin(phase)."""
    return -math.sin(phase)


def _common(state: DynState, params: SystemParams):
    """Mode values, drive phase and motion derivatives shared by all models."""
    ph = params.k * state.x
    f = mode_f(ph)
    dfdx = params.k * mode_df(ph)
    drive = cmath.exp(1j * params.delta_t * state.t)
    dx = 2.0 * params.omega_r * state.p
    dp = -2.0 * params.g * dfdx * (state.alpha.conjugate() * state.beta).imag
    return f, drive, dx, dp


def rhs_full(state: DynState, params: SystemParams) -> DynState:
    """Time derivative of the full nonlinear model (finite saturation)."""
    if state.beta_z is None:
        raise ValueError("rhs_full requires a state with beta_z")
    f, drive, dx, dp = _common(state, params)
    bz = state.beta_z
    dalpha = ((-params.kappa + 1j * params.delta_c) * state.alpha
              - params.g * f * state.beta + params.eta_l)
    dbeta = ((-params.gamma + 1j * params.delta_a) * state.beta
             - params.g * f * state.alpha * bz
             - params.eta_t * bz * drive)
    dbeta_z = (-2.0 * params.gamma * (bz + 1.0)
               - 4.0 * params.g * f * (state.beta.conjugate() * state.alpha).real
               - 4.0 * params.eta_t * (state.beta.conjugate() * drive).real)
    return DynState(x=dx, p=dp, alpha=dalpha, beta=dbeta, beta_z=dbeta_z, t=1.0)


def rhs_linear(state: DynState, params: SystemParams) -> DynState:
    """Time derivative of the low-saturation (beta_z -> -1) model."""
    f, drive, dx, dp = _common(state, params)
    dalpha = ((-params.kappa + 1j * params.delta_c) * state.alpha
              - params.g * f * state.beta + params.eta_l)
    dbeta = ((-params.gamma + 1j * params.delta_a) * state.beta
             + params.g * f * state.alpha
             + params.eta_t * drive)
    return DynState(x=dx, p=dp, alpha=dalpha, beta=dbeta, beta_z=None, t=1.0)


def rhs_collective(state: DynState, params: SystemParams,
                   n_emitters: int) -> DynState:
    """Time derivative for a doped sphere with N emitters (bosonic limit).

    beta is the collective dipole <S->, valid while |beta|^2 << N.  The
    caller accounts for the larger mass through a reduced omega_r.
    """
    if n_emitters < 1:
        raise ValueError("n_emitters must be >= 1")
    f, drive, dx, dp = _common(state, params)
    n = float(n_emitters)
    dalpha = ((-params.kappa + 1j * params.delta_c) * state.alpha
              - params.g * f * state.beta + params.eta_l)
    dbeta = ((-params.gamma + 1j * params.delta_a) * state.beta
             + params.g * n * f * state.alpha
             + n * params.eta_t * drive)
    return DynState(x=dx, p=dp, alpha=dalpha, beta=dbeta, beta_z=None, t=1.0)


def model_dim(model: str) -> int:
    """Length of the flat state vector for a model variant."""
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    return 7 if model == "full" else 6


def make_rhs(model: str, params: SystemParams, n_emitters: int = 1):
    """Vector-valued RHS f(t, y) for the generic integrator.

    y follows the VEC_FIELDS component order of state.DynState.
    """
    if model == "full":
        def f(t, y):
            s = DynState.from_vector(y, t=t)
            d = rhs_full(s, params)
            return d.to_vector()
    elif model == "linear":
        def f(t, y):
            s = DynState.from_vector(y, t=t)
            d = rhs_linear(s, params)
            return d.to_vector()
    elif model == "collective":
        def f(t, y):
            s = DynState.from_vector(y, t=t)
            d = rhs_collective(s, params, n_emitters)
            return d.to_vector()
    else:
        raise ValueError(f"unknown model {model!r}")
    return f
