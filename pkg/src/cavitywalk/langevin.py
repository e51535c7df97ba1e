"""Colored-noise Langevin benchmark.

A damped particle obeys dv/dt = -lambda*v + xi(t), dx/dt = v, where the
force correlation is prescribed:

    <xi(t')xi(t'')> = 2d * K(t'-t'') * cos(Omega*(t'-t''))

with K a Dirac delta, a Gaussian envelope exp(-tau^2/(2 sigma^2)) or an
exponential envelope exp(-|tau|/sigma).  For delta noise the position
variance has the closed form

    <(dx)^2>(t) = (2d/lambda^2)
                  * (t - (2/lambda)(1 - e^{-lambda t})
                       + (1/(2 lambda))(1 - e^{-2 lambda t}))

whose long-time slope is 2d/lambda^2; the defaults (lambda, d) = (1, 1/8)
make that slope 1/4, matching the unbiased lattice walk.  Colored
kernels produce strictly smaller long-time slopes (sub-diffusion).

Noise synthesis uses circulant embedding: the target autocovariance is
embedded in a periodic sequence, its FFT gives the (non-negative)
spectral weights, and filtered white Gaussian noise realizes the exact
stationary covariance up to truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import ConfigError, InvalidKernelError, QuadratureError

KERNEL_KINDS = ("delta", "gaussian-cosine", "exponential-cosine")


@dataclass(frozen=True)
class NoiseKernel:
    """Force-correlation kernel: kind, strength d, width sigma, frequency Omega."""

    kind: str
    d: float
    sigma: float | None = None
    omega: float = 0.0

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ConfigError(f"unknown kernel kind {self.kind!r}")
        if not self.d > 0:
            raise ConfigError("kernel strength d must be > 0")
        if self.kind != "delta":
            if self.sigma is None or not self.sigma > 0:
                raise ConfigError("non-delta kernels need sigma > 0")
        if self.omega < 0:
            raise ConfigError("Omega must be >= 0")

    @property
    def is_delta(self) -> bool:
        return self.kind == "delta"

    def correlation(self, tau):
        """<xi(t)xi(t+tau)> for non-delta kernels."""
        if self.is_delta:
            raise ConfigError("delta kernel has no pointwise correlation")
        tau = np.asarray(tau, dtype=float)
        if self.kind == "gaussian-cosine":
            env = np.exp(-tau * tau / (2.0 * self.sigma ** 2))
        else:
            env = np.exp(-np.abs(tau) / self.sigma)
        return 2.0 * self.d * env * np.cos(self.omega * tau)

    def decay_time(self) -> float:
        """Lag beyond which the envelope is negligible (< ~1e-9)."""
        if self.is_delta:
            return 0.0
        if self.kind == "gaussian-cosine":
            return self.sigma * math.sqrt(2.0 * math.log(1e9))
        return self.sigma * math.log(1e9)


@dataclass(frozen=True)
class LangevinParams:
    """Damping, kernel and Monte Carlo controls for a Langevin run."""

    lambda_damp: float = 1.0
    kernel: NoiseKernel = NoiseKernel("delta", d=0.125)
    dt: float = 0.01
    t_end: float = 20.0
    n_realizations: int = 2000
    master_seed: int = 0

    def __post_init__(self):
        if not self.lambda_damp > 0:
            raise ConfigError("lambda_damp must be > 0")
        if not 0 < self.dt < self.t_end:
            raise ConfigError("need 0 < dt < t_end")
        if self.n_realizations < 2:
            raise ConfigError("n_realizations must be >= 2")
        if not self.kernel.is_delta and self.dt > self.kernel.sigma / 10.0:
            raise ConfigError("dt must be <= sigma/10 for colored kernels")


_EV_TOL = 1e-8


def _circulant_eigenvalues(r: np.ndarray) -> np.ndarray:
    """Spectral weights of the circulant embedding of autocovariance r.

    r holds lags 0..m-1; the embedding has length 2(m-1).  Raises
    InvalidKernelError if the implied spectral density is negative
    beyond tolerance; small negative excursions are clipped to zero.
    """
    r = np.asarray(r, dtype=float)
    if len(r) < 2:
        raise ConfigError("need at least two lags")
    c = np.concatenate([r, r[-2:0:-1]])
    ev = np.fft.fft(c).real
    top = float(np.max(ev))
    if top <= 0.0 or np.min(ev) < -_EV_TOL * top:
        raise InvalidKernelError(
            f"negative spectral density: min eigenvalue {np.min(ev):g}")
    return np.clip(ev, 0.0, None)


def _synthesize_from_ev(ev: np.ndarray, n: int,
                        rng: np.random.Generator) -> np.ndarray:
    m = len(ev)
    z = rng.normal(size=m) + 1j * rng.normal(size=m)
    w = np.fft.fft(np.sqrt(ev) * z) / math.sqrt(m)
    return w.real[:n]


def kernel_eigenvalues(kernel: NoiseKernel, dt: float, n: int) -> np.ndarray:
    """Embedding eigenvalues for a kernel sampled at stride dt.

    The lag grid extends past n to let the envelope decay, keeping the
    truncated embedding positive semi-definite.
    """
    m = max(int(n), int(math.ceil(kernel.decay_time() / dt)) + 2)
    lags = dt * np.arange(m)
    return _circulant_eigenvalues(kernel.correlation(lags))


def synthesize_noise(kernel: NoiseKernel, dt: float, n: int,
                     rng: np.random.Generator) -> np.ndarray:
    """Stationary Gaussian force series with the kernel's autocovariance.

    The delta kernel yields i.i.d. Gaussians of variance 2d/dt (the
    discrete representation of white noise of intensity 2d).
    """
    if n < 1:
        raise ConfigError("n must be >= 1")
    if kernel.is_delta:
        return rng.normal(0.0, math.sqrt(2.0 * kernel.d / dt), n)
    ev = kernel_eigenvalues(kernel, dt, n)
    return _synthesize_from_ev(ev, n, rng)


@dataclass
class VarianceCurve:
    """Monte Carlo position variance with standard errors and the
    delta-noise closed form at the same (lambda, d) for reference."""

    times: np.ndarray
    var_mc: np.ndarray
    se_mc: np.ndarray
    var_analytic: np.ndarray
    params: LangevinParams

    def long_time_slope(self, tail_fraction: float = 0.5) -> float:
        """Least-squares slope of the variance over the late-time window."""
        i0 = int(len(self.times) * (1.0 - tail_fraction))
        i0 = max(0, min(i0, len(self.times) - 2))
        return float(np.polyfit(self.times[i0:], self.var_mc[i0:], 1)[0])


def langevin_run(params: LangevinParams, n_report: int = 50) -> VarianceCurve:
    """Monte Carlo <(x - x0)^2>(t) over seeded noise realizations.

    The damping factor is integrated exactly per step (the force is
    piecewise constant over dt):
        v' = v*E + xi*(1-E)/lam,  E = exp(-lam*dt)
        x' = x + v*(1-E)/lam + xi*(dt - (1-E)/lam)/lam
    Realizations use per-index seeded streams; the reduction is an
    ordered mean, so results are reproducible at any parallelism.
    """
    lam = params.lambda_damp
    dt = params.dt
    n_steps = int(round(params.t_end / dt))
    n_real = params.n_realizations
    report_every = max(1, n_steps // n_report)
    report_idx = np.arange(report_every, n_steps + 1, report_every)

    if params.kernel.is_delta:
        ev = None
        sd = math.sqrt(2.0 * params.kernel.d / dt)
    else:
        ev = kernel_eigenvalues(params.kernel, dt, n_steps)
        sd = 0.0
    xi = np.empty((n_real, n_steps))
    for i in range(n_real):
        ss = np.random.SeedSequence(params.master_seed, spawn_key=(i,))
        rng = np.random.Generator(np.random.PCG64(ss))
        if ev is None:
            xi[i] = rng.normal(0.0, sd, n_steps)
        else:
            xi[i] = _synthesize_from_ev(ev, n_steps, rng)

    e = math.exp(-lam * dt)
    cv = (1.0 - e) / lam
    cx = (dt - cv) / lam
    x = np.zeros(n_real)
    v = np.zeros(n_real)
    var = np.empty(len(report_idx))
    se = np.empty(len(report_idx))
    row = 0
    for s in range(1, n_steps + 1):
        f = xi[:, s - 1]
        x += v * cv + f * cx
        v = v * e + f * cv
        if row < len(report_idx) and s == report_idx[row]:
            d2 = x * x
            var[row] = d2.mean()
            se[row] = d2.std(ddof=1) / math.sqrt(n_real)
            row += 1
    times = report_idx * dt
    return VarianceCurve(times=times, var_mc=var, se_mc=se,
                         var_analytic=variance_analytic(lam, params.kernel.d,
                                                        times),
                         params=params)


def variance_analytic(lambda_damp: float, d: float, t):
    """Closed-form delta-noise position variance (see module docstring)."""
    if not lambda_damp > 0:
        raise ConfigError("lambda_damp must be > 0")
    lam = lambda_damp
    t = np.asarray(t, dtype=float)
    return (2.0 * d / lam ** 2) * (
        t - (2.0 / lam) * (1.0 - np.exp(-lam * t))
        + (1.0 / (2.0 * lam)) * (1.0 - np.exp(-2.0 * lam * t)))


def _phi_overlap(tau: float, t: float, lam: float) -> float:
    """Closed form of W(tau) = int phi(u) phi(u - tau) du over [tau, t],
    phi(u) = (1 - e^{lam(u - t)})/lam; the weight of the correlation at
    lag tau in the double-integral variance."""
    if tau > t:
        return 0.0
    el = math.exp(-lam * (t - tau))
    return (1.0 / lam ** 2) * (
        (t - tau)
        - (1.0 / lam) * (1.0 - el)
        - (1.0 / lam) * (math.exp(-lam * tau) - math.exp(-lam * t))
        + (1.0 / (2.0 * lam)) * (math.exp(-lam * tau)
                                 - math.exp(-lam * (2.0 * t - tau))))


def variance_double_integral(kernel: NoiseKernel, lambda_damp: float,
                             t: float, rtol: float = 1e-6) -> float:
    """Position variance from the correlation double integral

        int_0^t int_0^t phi(t') phi(t'') <xi(t')xi(t'')> dt' dt''

    reduced to one dimension over the lag.  For the delta kernel the
    reduction is 2d * int phi(u)^2 du, evaluated numerically so it
    remains an independent check of the closed form.
    """
    if not lambda_damp > 0 or not t > 0:
        raise ConfigError("need lambda_damp > 0 and t > 0")
    lam = lambda_damp
    if kernel.is_delta:
        def phi2(u):
            return ((1.0 - math.exp(lam * (u - t))) / lam) ** 2
        val, err = quad(phi2, 0.0, t, epsabs=0.0, epsrel=rtol / 10.0,
                        limit=200)
        val *= 2.0 * kernel.d
        err *= 2.0 * kernel.d
    else:
        def integrand(tau):
            return float(kernel.correlation(tau)) * _phi_overlap(tau, t, lam)
        pts = None
        if kernel.omega > 0:
            n_osc = kernel.omega * t / (2.0 * math.pi)
            if 1.0 < n_osc < 50.0:
                pts = list(np.arange(1, int(n_osc) + 1)
                           * (2.0 * math.pi / kernel.omega))
        val, err = quad(integrand, 0.0, t, epsabs=0.0, epsrel=rtol / 10.0,
                        limit=500, points=pts)
        val *= 2.0
        err *= 2.0
    if abs(err) > rtol * max(abs(val), 1e-300) * 10.0:
        raise QuadratureError(
            f"variance quadrature error {err:g} vs value {val:g}")
    return float(val)
