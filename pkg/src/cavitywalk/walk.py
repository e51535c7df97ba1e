"""Discretization of trajectories into lattice walks and the statistics
of the resulting jump process: autocorrelation, ensemble variance
growth, site histograms, diffusion slope and mixing diagnostics.

Sites live on the half-integer lattice (spacing lambda/2 with
lambda = 1).  A trajectory is discretized per jump period T by the
trapezoidal mean of x over each window [(n-1)T, nT], rounded to the
nearest half-integer site; ties round half away from zero so results
are bit-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .backend import set_worker_threads
from .errors import (ConfigError, DegenerateSequenceError,
                     EmptySubpopulationError, IntegrationDivergedError,
                     InvalidRegimeError, UndersampledWindowError)
from .params import SystemParams
from .state import Trajectory

MIN_WINDOW_SAMPLES = 10


def round_to_site(x, mode: str = "half"):
    """Round positions to the nearest lattice site.

    mode "half" targets the half-integer lattice (default); "integer"
    is the comparison variant using whole-integer sites.  Ties round
    half away from zero.
    """
    x = np.asarray(x, dtype=float)
    if mode == "half":
        return np.copysign(np.floor(np.abs(2.0 * x) + 0.5), x) / 2.0
    if mode == "integer":
        return np.copysign(np.floor(np.abs(x) + 0.5), x)
    raise ConfigError(f"unknown rounding mode {mode!r}")


@dataclass
class DiscreteWalk:
    """Site sequence of one discretized trajectory.

    sites[0] is the site of the initial position, sites[n >= 1] the
    rounded windowed means; jumps are consecutive site differences.
    """

    period: float
    sites: np.ndarray
    jumps: np.ndarray = field(init=False)

    def __post_init__(self):
        self.sites = np.asarray(self.sites, dtype=float)
        self.jumps = np.diff(self.sites)

    def __len__(self) -> int:
        return len(self.sites)


def window_means(times: np.ndarray, x: np.ndarray, period: float,
                 t0: float = 0.0) -> np.ndarray:
    """Trapezoidal mean of x over each full window [t0+(n-1)T, t0+nT]."""
    times = np.asarray(times, dtype=float)
    x = np.asarray(x, dtype=float)
    if len(times) < 2:
        raise UndersampledWindowError("need at least two samples")
    dt = times[1] - times[0]
    per_win = int(round(period / dt))
    if abs(per_win * dt - period) > 1e-9 * period:
        raise ConfigError(
            f"sample stride {dt:g} does not divide the period {period:g}")
    if per_win < MIN_WINDOW_SAMPLES:
        raise UndersampledWindowError(
            f"{per_win} samples per window, need >= {MIN_WINDOW_SAMPLES}")
    n_win = (len(times) - 1) // per_win
    if n_win < 1:
        raise UndersampledWindowError("trajectory shorter than one period")
    means = np.empty(n_win)
    for w in range(n_win):
        seg = x[w * per_win:(w + 1) * per_win + 1]
        means[w] = (0.5 * (seg[0] + seg[-1]) + seg[1:-1].sum()) / per_win
    return means


def discretize(traj: Trajectory, period: float,
               mode: str = "half") -> DiscreteWalk:
    """Discretize a sampled trajectory into a lattice walk.

    Requires a duration of at least two periods.  The initial site
    (from the instantaneous starting position) is prepended so that a
    run over N windows yields N jumps.
    """
    if traj.duration + 1e-9 < 2.0 * period:
        raise UndersampledWindowError("trajectory shorter than two periods")
    means = window_means(traj.times, traj.x, period, t0=float(traj.times[0]))
    start = round_to_site(traj.x[0], mode)
    sites = np.concatenate([[start], round_to_site(means, mode)])
    return DiscreteWalk(period=period, sites=sites)


@dataclass
class CorrelationSeries:
    """Normalized jump autocorrelation C(tau), tau = 0..tau_max."""

    values: np.ndarray
    normalized: bool = True

    def __len__(self) -> int:
        return len(self.values)


def autocorrelation(jumps, tau_max: int) -> CorrelationSeries:
    """Normalized autocorrelation of a jump sequence.

    Each lag uses the mean product over its valid pairs,
        m(tau) = <(j_{n+tau} - <j>)(j_n - <j>)>,
    normalized by m(0) so C(0) = 1 exactly.  A zero-variance sequence
    has no normalization and raises DegenerateSequenceError.
    """
    j = np.asarray(jumps, dtype=float)
    n = len(j)
    if n < 2:
        raise ConfigError("need at least two jumps")
    if tau_max > n // 2:
        raise ConfigError(f"tau_max {tau_max} exceeds len(jumps)/2 = {n // 2}")
    jc = j - j.mean()
    m0 = float(np.mean(jc * jc))
    if m0 == 0.0:
        raise DegenerateSequenceError("all jumps equal; zero variance")
    vals = np.empty(tau_max + 1)
    vals[0] = 1.0
    for tau in range(1, tau_max + 1):
        vals[tau] = float(np.mean(jc[tau:] * jc[:-tau])) / m0
    return CorrelationSeries(values=vals, normalized=True)


def thermal_init_sampler(params: SystemParams, rng: np.random.Generator):
    """Draw (x0, p0) from the post-cavity-cooling thermal widths.

    Momentum width 1/sqrt(2*omega_r) (units hbar*k); position width
    1/(sqrt(2*U0)*eta_l) in mode-phase units, converted to wavelength
    units by 1/k.  Requires U0*eta_l^2 > 0.
    """
    u = params.u0 * params.eta_l ** 2
    if u <= 0.0:
        raise InvalidRegimeError(
            f"thermal width needs U0*eta_l^2 > 0, got {u:g}")
    dp0 = 1.0 / np.sqrt(2.0 * params.omega_r)
    dx0_phase = 1.0 / np.sqrt(2.0 * params.u0) / params.eta_l
    x0 = rng.normal(0.0, dx0_phase / params.k)
    p0 = rng.normal(0.0, dp0)
    return float(x0), float(p0)


@dataclass
class EnsembleStats:
    """Aggregated walk statistics of a trajectory ensemble."""

    period: float
    n_traj: int
    n_steps: int
    inits: np.ndarray          # (n_traj, 2) initial (x0, p0)
    walks: np.ndarray          # (n_traj, n_steps + 1) site sequences
    msd: np.ndarray            # (n_steps + 1,) mean squared displacement
    slope: float
    intercept: float
    hist_sites: np.ndarray
    hist_counts: np.ndarray
    hist_mean: float
    hist_std: float
    corr: CorrelationSeries    # trajectory-averaged, C(0) = 1
    n_degenerate: int          # members excluded from the correlation average
    beta2_max: float           # saturation monitor max |beta|^2 over the run

    @property
    def jumps(self) -> np.ndarray:
        return np.diff(self.walks, axis=1)


def _traj_seed_draws(master_seed: int, index: int, n_draws: int = 2):
    """Per-trajectory RNG stream: stable hash of (master_seed, index)."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss)).uniform(-1.0, 1.0, n_draws)


def sample_initial_conditions(n_traj: int, init_box, master_seed: int,
                              params: SystemParams | None = None):
    """Uniform (x0, p0) draws in the centered box, one stream per member.

    init_box = (x half-width, p half-width); the string "thermal"
    switches to thermal_init_sampler draws (params required).
    """
    out = np.empty((n_traj, 2))
    if isinstance(init_box, str):
        if init_box != "thermal":
            raise ConfigError(f"unknown init scheme {init_box!r}")
        if params is None:
            raise ConfigError("thermal init requires params")
        for i in range(n_traj):
            ss = np.random.SeedSequence(master_seed, spawn_key=(i,))
            rng = np.random.Generator(np.random.PCG64(ss))
            out[i] = thermal_init_sampler(params, rng)
        return out
    xw, pw = float(init_box[0]), float(init_box[1])
    if xw < 0 or pw < 0:
        raise ConfigError("init box half-widths must be >= 0")
    for i in range(n_traj):
        u = _traj_seed_draws(master_seed, i)
        out[i, 0] = xw * u[0]
        out[i, 1] = pw * u[1]
    return out


def aggregate_walks(walks: np.ndarray, period: float, inits: np.ndarray,
                    tau_max: int | None = None,
                    beta2_max: float = 0.0) -> EnsembleStats:
    """Walk-matrix statistics: mean squared displacement and its fitted
    slope, final-site histogram with sample standard deviation as width,
    and the trajectory-averaged normalized jump autocorrelation.

    walks has shape (n_traj, n_steps + 1) of site coordinates; members
    whose jump sequence is degenerate (zero variance) are excluded from
    the correlation average only.
    """
    walks = np.asarray(walks, dtype=float)
    n_traj, n_cols = walks.shape
    n_steps = n_cols - 1
    disp = walks - walks[:, :1]
    msd = np.concatenate([[0.0], np.mean(disp[:, 1:] ** 2, axis=0)])
    ns = np.arange(n_steps + 1, dtype=float)
    slope, intercept = np.polyfit(ns, msd, 1)

    final = walks[:, -1]
    lo = np.min(final)
    sites_axis = lo + 0.5 * np.arange(int(round((np.max(final) - lo) * 2)) + 1)
    counts = np.array([np.sum(final == s) for s in sites_axis], dtype=np.int64)
    hist_mean = float(np.mean(final))
    hist_std = float(np.std(final, ddof=1)) if n_traj > 1 else 0.0

    if tau_max is None:
        tau_max = min(20, n_steps // 2)
    acc = np.zeros(tau_max + 1)
    n_used = 0
    n_degenerate = 0
    jumps = np.diff(walks, axis=1)
    for i in range(n_traj):
        try:
            c = autocorrelation(jumps[i], tau_max)
        except DegenerateSequenceError:
            n_degenerate += 1
            continue
        acc += c.values
        n_used += 1
    corr = CorrelationSeries(values=acc / n_used if n_used else acc,
                             normalized=bool(n_used))

    return EnsembleStats(
        period=period, n_traj=n_traj, n_steps=n_steps, inits=inits,
        walks=walks, msd=msd, slope=float(slope), intercept=float(intercept),
        hist_sites=sites_axis, hist_counts=counts, hist_mean=hist_mean,
        hist_std=hist_std, corr=corr, n_degenerate=n_degenerate,
        beta2_max=beta2_max)


def ensemble_run(params: SystemParams, init_box, n_traj: int, n_steps: int,
                 master_seed: int, *, model: str = "linear", dt: float = 0.01,
                 n_emitters: int = 1, tau_max: int | None = None,
                 workers: int | None = None,
                 rounding: str = "half") -> EnsembleStats:
    """Integrate an ensemble over n_steps jump periods and aggregate.

    Per-trajectory initial conditions come from deterministic seeded
    streams; integration is parallel over members with an ordered
    reduction, so results are identical for any worker count.
    """
    if n_traj < 1:
        raise ConfigError("n_traj must be >= 1")
    if n_steps < 1:
        raise ConfigError("n_steps must be >= 1")
    if params.delta_t == 0.0:
        raise ConfigError("ensemble_run requires delta_t != 0")
    period = params.jump_period
    win_steps = int(round(period / dt))
    if abs(win_steps * dt - period) > 1e-9 * period:
        raise ConfigError(f"dt {dt:g} does not divide the jump period {period:g}")
    if win_steps < MIN_WINDOW_SAMPLES:
        raise UndersampledWindowError(
            f"{win_steps} steps per window, need >= {MIN_WINDOW_SAMPLES}")
    set_worker_threads(workers)

    inits = sample_initial_conditions(n_traj, init_box, master_seed, params)
    dim = 7 if model == "full" else 6
    y0s = np.zeros((n_traj, dim))
    y0s[:, 0] = inits[:, 0]
    y0s[:, 1] = inits[:, 1]
    if model == "full":
        y0s[:, 6] = -1.0

    means, _finals, beta2, status, t_bad = kernels.batch_window_means(
        model, y0s, params, dt, win_steps, n_steps, n_emitters=n_emitters)
    bad = np.nonzero(status != 0)[0]
    if bad.size:
        i = int(bad[0])
        raise IntegrationDivergedError(float(t_bad[i]), traj_index=i,
                                       seed=master_seed)

    start_sites = round_to_site(inits[:, 0], rounding)
    walks = np.concatenate([start_sites[:, None],
                            round_to_site(means, rounding)], axis=1)
    return aggregate_walks(walks, period, inits, tau_max=tau_max,
                           beta2_max=float(np.max(beta2)))


def mixing_report(stats: EnsembleStats) -> dict:
    """Mixing of the x0 > 0 and x0 < 0 subpopulations at the final step.

    Returns the final-site means of both subpopulations, their
    difference, and the overlap coefficient of the two final-site
    distributions (1 = identical, 0 = disjoint).
    """
    x0 = stats.inits[:, 0]
    pos = x0 > 0.0
    neg = x0 < 0.0
    if not np.any(pos) or not np.any(neg):
        raise EmptySubpopulationError("need members on both sides of x0 = 0")
    final = stats.walks[:, -1]
    fp, fn = final[pos], final[neg]
    sites = np.unique(final)
    hp = np.array([np.mean(fp == s) for s in sites])
    hn = np.array([np.mean(fn == s) for s in sites])
    overlap = float(np.minimum(hp, hn).sum())
    return {
        "mean_final_pos": float(np.mean(fp)),
        "mean_final_neg": float(np.mean(fn)),
        "mean_difference": float(np.mean(fp) - np.mean(fn)),
        "overlap": overlap,
        "n_pos": int(pos.sum()),
        "n_neg": int(neg.sum()),
    }
