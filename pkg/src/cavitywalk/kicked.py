"""Frequency-comb transverse driving and its kicked-rotor limit.

Driving the dipole with 2*N_f + 1 equally spaced frequencies centered
on the longitudinal pump turns the drive into a Dirichlet kernel

    eta_t * sum_{n=-N_f}^{N_f} e^{i n delta t}
        = eta_t * sin((2 N_f + 1) delta t / 2) / sin(delta t / 2)

which approaches a Dirac comb of period T_delta = 2*pi/delta as
N_f -> infinity.  With atomic decay and cavity backaction neglected and
alpha ~= eta_l, the particle motion reduces to delta-kicked pendulum
dynamics, i.e. the standard map.  The map here uses the kick-then-drift
ordering:

    p' = p - K*sin(x),   x' = x + 2*omega_r*T_delta*p'

with physical kick strength K = 2*eta_l*eta_bar_T and the standard-map
normalization K_eff = 2*omega_r*T_delta*K.  chaos_scan runs the
normalized map directly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .params import SystemParams

_SING_TOL = 1e-8


@dataclass(frozen=True)
class CombParams:
    """Frequency comb: half-width n_f, tooth spacing delta, per-tooth
    amplitude eta_t."""

    n_f: int
    delta: float
    eta_t: float = 1.0

    def __post_init__(self):
        if self.n_f < 0:
            raise ConfigError("n_f must be >= 0")
        if not self.delta > 0:
            raise ConfigError("delta must be > 0")

    @property
    def t_delta(self) -> float:
        return 2.0 * math.pi / self.delta


@dataclass
class KickedState:
    """Kicked-rotor state: raw phase x, momentum p, kick index n."""

    x: float
    p: float
    n: int = 0

    @property
    def x_wrapped(self) -> float:
        return float(np.mod(self.x, 2.0 * math.pi))


def comb_drive(t, comb: CombParams):
    """Real comb amplitude sum_{n=-N_f}^{N_f} e^{i n delta t}, evaluated
    through the Dirichlet closed form; the removable singularities at
    delta*t in 2*pi*Z take the limit value 2*N_f + 1."""
    t = np.asarray(t, dtype=float)
    u = comb.delta * t
    s = np.sin(0.5 * u)
    peak = np.abs(s) < _SING_TOL
    safe = np.where(peak, 1.0, s)
    vals = np.sin((2.0 * comb.n_f + 1.0) * 0.5 * u) / safe
    vals = np.where(peak, 2.0 * comb.n_f + 1.0, vals)
    out = comb.eta_t * vals
    return float(out) if out.ndim == 0 else out


def rhs_comb(state, t: float, params: SystemParams, comb: CombParams):
    """Derivative of (x, p, beta) under comb driving.

    beta evolves freely (no decay, no cavity backaction) with the comb
    drive; the cavity is pinned at alpha = eta_l, so the force is
    -2*g*(df/dx)*eta_l*Im{beta}.
    """
    x, p, beta = state
    dbeta = 1j * params.delta_a * beta + comb_drive(t, comb)
    dfdx = -params.k * math.sin(params.k * x)
    dx = 2.0 * params.omega_r * p
    dp = -2.0 * params.g * dfdx * params.eta_l * beta.imag
    return dx, dp, dbeta


def integrate_comb(state0, params: SystemParams, comb: CombParams,
                   dt: float, n_steps: int, t0: float = 0.0):
    """RK4 integration of the comb-driven system; returns the states
    sampled at every step as arrays (x, p, beta)."""
    x, p, beta = float(state0[0]), float(state0[1]), complex(state0[2])
    xs = np.empty(n_steps + 1)
    ps = np.empty(n_steps + 1)
    bs = np.empty(n_steps + 1, dtype=complex)
    xs[0], ps[0], bs[0] = x, p, beta
    for s in range(n_steps):
        t = t0 + s * dt
        k1 = rhs_comb((x, p, beta), t, params, comb)
        k2 = rhs_comb((x + 0.5 * dt * k1[0], p + 0.5 * dt * k1[1],
                       beta + 0.5 * dt * k1[2]), t + 0.5 * dt, params, comb)
        k3 = rhs_comb((x + 0.5 * dt * k2[0], p + 0.5 * dt * k2[1],
                       beta + 0.5 * dt * k2[2]), t + 0.5 * dt, params, comb)
        k4 = rhs_comb((x + dt * k3[0], p + dt * k3[1],
                       beta + dt * k3[2]), t + dt, params, comb)
        x += dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        p += dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        beta += dt / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        xs[s + 1], ps[s + 1], bs[s + 1] = x, p, beta
    return xs, ps, bs


def physical_kick_strength(params: SystemParams) -> float:
    """Impulse K = 2*eta_l*eta_bar_T of one comb kick on the momentum."""
    return 2.0 * params.eta_l * params.eta_bar_t


def k_eff(params: SystemParams, comb: CombParams) -> float:
    """Standard-map normalization 2*omega_r*T_delta*K of the kick."""
    return 2.0 * params.omega_r * comb.t_delta * physical_kick_strength(params)


def standard_map_step(state: KickedState, kick_strength: float,
                      omega_r: float = 1.0,
                      t_delta: float = 1.0) -> KickedState:
    """One kick-then-drift iteration of the physical map."""
    p_new = state.p - kick_strength * math.sin(state.x)
    x_new = state.x + 2.0 * omega_r * t_delta * p_new
    return KickedState(x=x_new, p=p_new, n=state.n + 1)


def standard_map_run(x0, p0, k_eff_value: float, n_steps: int):
    """Iterate the normalized map over a batch; returns <(p - p0)^2>(n)
    for n = 0..n_steps."""
    x = np.asarray(x0, dtype=float).copy()
    p = np.asarray(p0, dtype=float).copy()
    pstart = p.copy()
    msd = np.empty(n_steps + 1)
    msd[0] = 0.0
    for n in range(1, n_steps + 1):
        p -= k_eff_value * np.sin(x)
        x += p
        msd[n] = np.mean((p - pstart) ** 2)
    return msd


_DIFFUSIVE_FRACTION = 0.05


@dataclass
class ChaosScanRow:
    k_eff: float
    growth_rate: float
    regime: str


def chaos_scan(k_values, n_steps: int, ensemble_size: int,
               seed: int) -> list[ChaosScanRow]:
    """Momentum-variance growth rate of the normalized standard map.

    For each K the ensemble starts from uniform (x, p) in [0, 2*pi)^2
    (per-K seeded streams) and the rate is the least-squares slope of
    <(p-p0)^2> against kick count; regimes are flagged diffusive when
    the rate exceeds 5% of the quasilinear value K^2/2.
    """
    if n_steps < 2 or ensemble_size < 2:
        raise ConfigError("need n_steps >= 2 and ensemble_size >= 2")
    rows = []
    for i, kv in enumerate(k_values):
        ss = np.random.SeedSequence(seed, spawn_key=(i,))
        rng = np.random.Generator(np.random.PCG64(ss))
        x0 = rng.uniform(0.0, 2.0 * math.pi, ensemble_size)
        p0 = rng.uniform(0.0, 2.0 * math.pi, ensemble_size)
        msd = standard_map_run(x0, p0, kv, n_steps)
        rate = float(np.polyfit(np.arange(n_steps + 1), msd, 1)[0])
        quasilinear = kv * kv / 2.0
        regime = ("diffusive"
                  if quasilinear > 0 and rate > _DIFFUSIVE_FRACTION * quasilinear
                  else "bounded")
        rows.append(ChaosScanRow(k_eff=float(kv), growth_rate=rate,
                                 regime=regime))
    return rows
