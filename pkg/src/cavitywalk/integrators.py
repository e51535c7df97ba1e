"""Fixed-step RK4 integration with uniform-stride sampling.

Two execution paths produce the same mathematics:

* the generic functions here take an arbitrary vector RHS f(t, y) and run
  in plain Python (reference path, used for tests and small systems);
* ``integrate_model`` dispatches model runs to the compiled batch kernels
  (numba or vectorized numpy, see backend.py).

Deterministic by construction: no adaptivity, no state outside the
arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .dynamics import make_rhs, model_dim
from .errors import ConfigError, IntegrationDivergedError
from .params import SystemParams
from .state import DynState, Trajectory


@dataclass(frozen=True)
class IntegrationPlan:
    """Step size, final time and output stride of a fixed-step run."""

    dt: float = 0.01
    t_end: float = 100.0
    sample_stride: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError("dt must be > 0")
        if not self.t_end > 0:
            raise ConfigError("t_end must be > 0")
        if self.sample_stride < 1:
            raise ConfigError("sample_stride must be >= 1")

    @property
    def n_steps(self) -> int:
        return int(np.floor(self.t_end / self.dt + 1e-9))

    @property
    def n_samples(self) -> int:
        return self.n_steps // self.sample_stride + 1

    @property
    def dt_out(self) -> float:
        return self.dt * self.sample_stride


def rk4_step(f, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step of size dt for dy/dt = f(t, y).

    Raises IntegrationDivergedError if any stage produces a non-finite
    derivative.
    """
    y = np.asarray(y, dtype=np.float64)
    if dt == 0.0:
        return y.copy()
    k1 = np.asarray(f(t, y))
    k2 = np.asarray(f(t + 0.5 * dt, y + 0.5 * dt * k1))
    k3 = np.asarray(f(t + 0.5 * dt, y + 0.5 * dt * k2))
    k4 = np.asarray(f(t + dt, y + dt * k3))
    if not (np.all(np.isfinite(k1)) and np.all(np.isfinite(k2))
            and np.all(np.isfinite(k3)) and np.all(np.isfinite(k4))):
        raise IntegrationDivergedError(t)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_vector(f, y0, plan: IntegrationPlan, t0: float = 0.0):
    """Integrate dy/dt = f(t, y) from t0, sampling every sample_stride steps.

    Returns (times, samples) with samples[0] = y0 and
    floor(t_end/(dt*stride)) + 1 rows in total.
    """
    y = np.asarray(y0, dtype=np.float64).copy()
    n_steps = plan.n_steps
    stride = plan.sample_stride
    n_samp = plan.n_samples
    out = np.empty((n_samp, y.shape[0]))
    times = np.empty(n_samp)
    out[0] = y
    times[0] = t0
    row = 1
    t = t0
    for step in range(n_steps):
        y = rk4_step(f, t, y, plan.dt)
        t = t0 + (step + 1) * plan.dt
        if (step + 1) % stride == 0 and row < n_samp:
            out[row] = y
            times[row] = t
            row += 1
    return times[:row], out[:row]


def integrate(rhs, state0: DynState, plan: IntegrationPlan,
              params: SystemParams, model: str = "linear",
              n_emitters: int = 1) -> Trajectory:
    """Generic-path integration of a model RHS from a DynState.

    ``rhs`` is one of dynamics.rhs_linear / rhs_full / rhs_collective and
    is only used to infer consistency with ``model``; evaluation goes
    through the vector form.  Mainly a reference path; prefer
    integrate_model for long runs.
    """
    f = make_rhs(model, params, n_emitters)
    y0 = state0.to_vector()
    if y0.shape[0] != model_dim(model):
        raise ConfigError(
            f"state dimension {y0.shape[0]} incompatible with model {model!r}")
    times, samples = integrate_vector(f, y0, plan, t0=state0.t)
    return Trajectory(params=params, dt_out=plan.dt_out, times=times,
                      samples=samples, model=model)


def integrate_model(params: SystemParams, state0: DynState,
                    plan: IntegrationPlan, model: str = "linear",
                    n_emitters: int = 1) -> Trajectory:
    """Fast-path integration through the compiled batch kernels."""
    y0 = state0.to_vector()
    if y0.shape[0] != model_dim(model):
        raise ConfigError(
            f"state dimension {y0.shape[0]} incompatible with model {model!r}")
    times, samples, status, t_bad = kernels.batch_integrate_sampled(
        model, y0[None, :], params, plan.dt, plan.n_steps,
        plan.sample_stride, t0=state0.t, n_emitters=n_emitters)
    if status[0] != 0:
        raise IntegrationDivergedError(t_bad[0])
    return Trajectory(params=params, dt_out=plan.dt_out, times=times,
                      samples=samples[0], model=model)
