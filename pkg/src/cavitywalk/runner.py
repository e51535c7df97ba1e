"""Experiment orchestration: execute a RunConfig, write tables and the
manifest.  File schemas (fixed column orders):

    trajectory.csv  t, x, p, re_alpha, im_alpha, re_beta, im_beta[, beta_z]
    walk.csv        n, site
    corr.csv        tau, C
    variance.csv    n, var
    hist.csv        site, count
    inits.csv       traj, x0, p0, site0
    walks.csv       traj, n, site
    langevin.csv    t, var_mc, var_analytic
    scan.csv        K_eff, growth_rate, regime
    forces.csv      x, t, f_l, f_t, f_lt, total

Identical config and master seed give byte-identical data files at any
worker count; the manifest additionally carries wall-clock time.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from . import __version__
from .backend import set_worker_threads
from .config import RunConfig, emit_config
from .errors import ConfigError
from .forces import force_terms
from .integrators import IntegrationPlan, integrate_model
from .kicked import chaos_scan
from .langevin import langevin_run
from .state import initial_state
from .tables import Manifest, write_table
from .walk import autocorrelation, discretize, ensemble_run, mixing_report

OUT_DIR_ENV = "CAVITYWALK_OUT"


def resolve_out_dir(cfg: RunConfig, override: str | None = None) -> Path:
    out = override or os.environ.get(OUT_DIR_ENV) or cfg.out_dir
    if not out:
        raise ConfigError("no output directory: set out_dir, --out or "
                          f"{OUT_DIR_ENV}")
    return Path(out)


def run(cfg: RunConfig, out_dir: str | None = None) -> dict:
    """Execute the configured experiment; returns the manifest dict."""
    out = resolve_out_dir(cfg, out_dir)
    out.mkdir(parents=True, exist_ok=True)
    workers = set_worker_threads(cfg.workers)
    manifest = Manifest(cfg.kind, cfg.master_seed, __version__, workers)

    with open(out / "resolved.toml", "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(emit_config(cfg))

    if cfg.params is not None:
        p = cfg.params
        manifest.data["parameters"] = {
            "kappa": p.kappa, "gamma": p.gamma, "delta_a": p.delta_a,
            "delta_c": p.delta_c, "delta_t": p.delta_t, "eta_l": p.eta_l,
            "eta_t": p.eta_t, "g": p.g, "omega_r": p.omega_r, "k": p.k,
            "u0": p.u0, "eta_bar_t": p.eta_bar_t, "phi_delta": p.phi_delta,
            "model": cfg.model,
        }
        if p.delta_t != 0.0:
            manifest.data["parameters"]["T"] = p.jump_period

    if cfg.kind == "trajectory":
        _run_trajectory(cfg, out, manifest)
    elif cfg.kind == "ensemble":
        _run_ensemble(cfg, out, manifest)
    elif cfg.kind == "langevin":
        _run_langevin(cfg, out, manifest)
    elif cfg.kind == "comb-scan":
        _run_comb_scan(cfg, out, manifest)
    elif cfg.kind == "force-profile":
        _run_force_profile(cfg, out, manifest)
    else:
        raise ConfigError(f"unknown kind {cfg.kind!r}")

    manifest.add_file(out / "resolved.toml")
    manifest.write(out)
    return manifest.data


def _corr_tau_max(n_jumps: int, requested: int | None) -> int:
    tau = requested if requested else min(20, n_jumps // 2)
    return max(1, min(tau, n_jumps // 2))


def _run_trajectory(cfg: RunConfig, out: Path, manifest: Manifest):
    tc = cfg.trajectory
    state0 = initial_state(x=3.5e-3, p=0.0, full=(cfg.model == "full"))
    plan = IntegrationPlan(dt=tc.dt, t_end=tc.t_end,
                           sample_stride=tc.sample_stride)
    traj = integrate_model(cfg.params, state0, plan, model=cfg.model,
                           n_emitters=cfg.n_emitters)
    cols = [traj.times, traj.x, traj.p,
            traj.samples[:, 2], traj.samples[:, 3],
            traj.samples[:, 4], traj.samples[:, 5]]
    header = ["t", "x", "p", "re_alpha", "im_alpha", "re_beta", "im_beta"]
    if traj.beta_z is not None:
        cols.append(traj.beta_z)
        header.append("beta_z")
    rows = write_table(out / "trajectory.csv", header, cols)
    manifest.add_file(out / "trajectory.csv", rows)

    if cfg.walk is not None:
        walk = discretize(traj, cfg.walk.period, mode=cfg.walk.rounding)
        n_axis = np.arange(len(walk.sites))
        rows = write_table(out / "walk.csv", ["n", "site"],
                           [n_axis, walk.sites])
        manifest.add_file(out / "walk.csv", rows)
        tau_max = _corr_tau_max(len(walk.jumps), cfg.walk.tau_max)
        corr = autocorrelation(walk.jumps, tau_max)
        rows = write_table(out / "corr.csv", ["tau", "C"],
                           [np.arange(tau_max + 1), corr.values])
        manifest.add_file(out / "corr.csv", rows)
        manifest.data["results"]["n_sites_visited"] = int(
            len(np.unique(walk.sites)))

    manifest.data["results"]["n_samples"] = len(traj)
    manifest.data["results"]["x_final"] = float(traj.x[-1])


def _run_ensemble(cfg: RunConfig, out: Path, manifest: Manifest):
    w = cfg.walk
    params = cfg.params.with_period(w.period)
    init = "thermal" if w.init == "thermal" else w.box
    stats = ensemble_run(params, init, w.n_traj, w.n_steps, cfg.master_seed,
                         model=cfg.model, dt=cfg.dt,
                         n_emitters=cfg.n_emitters, tau_max=w.tau_max,
                         workers=cfg.workers, rounding=w.rounding)

    n_axis = np.arange(w.n_steps + 1)
    rows = write_table(out / "variance.csv", ["n", "var"],
                       [n_axis, stats.msd])
    manifest.add_file(out / "variance.csv", rows)

    rows = write_table(out / "hist.csv", ["site", "count"],
                       [stats.hist_sites, stats.hist_counts])
    manifest.add_file(out / "hist.csv", rows)

    taus = np.arange(len(stats.corr.values))
    rows = write_table(out / "corr.csv", ["tau", "C"],
                       [taus, stats.corr.values])
    manifest.add_file(out / "corr.csv", rows)

    traj_idx = np.arange(w.n_traj)
    rows = write_table(out / "inits.csv", ["traj", "x0", "p0", "site0"],
                       [traj_idx, stats.inits[:, 0], stats.inits[:, 1],
                        stats.walks[:, 0]])
    manifest.add_file(out / "inits.csv", rows)

    flat_traj = np.repeat(traj_idx, w.n_steps + 1)
    flat_n = np.tile(n_axis, w.n_traj)
    rows = write_table(out / "walks.csv", ["traj", "n", "site"],
                       [flat_traj, flat_n, stats.walks.ravel()])
    manifest.add_file(out / "walks.csv", rows)

    res = manifest.data["results"]
    res["slope"] = stats.slope
    res["intercept"] = stats.intercept
    res["hist_mean"] = stats.hist_mean
    res["hist_std"] = stats.hist_std
    res["n_degenerate_corr"] = stats.n_degenerate
    res["beta2_max"] = stats.beta2_max
    res["mixing"] = mixing_report(stats)


def _run_langevin(cfg: RunConfig, out: Path, manifest: Manifest):
    curve = langevin_run(cfg.langevin, n_report=cfg.n_report)
    rows = write_table(out / "langevin.csv", ["t", "var_mc", "var_analytic"],
                       [curve.times, curve.var_mc, curve.var_analytic])
    manifest.add_file(out / "langevin.csv", rows)
    kern = cfg.langevin.kernel
    manifest.data["parameters"] = {
        "kernel": kern.kind, "d": kern.d, "sigma": kern.sigma,
        "omega": kern.omega, "lambda_damp": cfg.langevin.lambda_damp,
        "dt": cfg.langevin.dt, "t_end": cfg.langevin.t_end,
        "n_realizations": cfg.langevin.n_realizations,
    }
    manifest.data["results"]["long_time_slope"] = curve.long_time_slope()
    manifest.data["results"]["delta_reference_slope"] = (
        2.0 * kern.d / cfg.langevin.lambda_damp ** 2)


def _run_comb_scan(cfg: RunConfig, out: Path, manifest: Manifest):
    rows_data = chaos_scan(cfg.comb.k_eff_values, cfg.comb.n_kicks,
                           cfg.comb.ensemble_size, cfg.master_seed)
    k_col = np.array([r.k_eff for r in rows_data])
    rate_col = np.array([r.growth_rate for r in rows_data])
    regime_col = np.array([r.regime for r in rows_data])
    n = write_table(out / "scan.csv", ["K_eff", "growth_rate", "regime"],
                    [k_col, rate_col, regime_col])
    manifest.add_file(out / "scan.csv", n)
    manifest.data["parameters"] = {
        "n_kicks": cfg.comb.n_kicks,
        "ensemble_size": cfg.comb.ensemble_size,
    }
    manifest.data["results"]["regimes"] = {
        str(r.k_eff): r.regime for r in rows_data}


def _run_force_profile(cfg: RunConfig, out: Path, manifest: Manifest):
    gx = cfg.grid.x
    gt = cfg.grid.t
    xs = np.linspace(gx[0], gx[1], gx[2])
    ts = np.linspace(gt[0], gt[1], gt[2])
    xg, tg = np.meshgrid(xs, ts, indexing="ij")
    f_l, f_t, f_lt = force_terms(xg, tg, cfg.params)
    total = f_l + f_t + f_lt
    rows = write_table(
        out / "forces.csv", ["x", "t", "f_l", "f_t", "f_lt", "total"],
        [xg.ravel(), tg.ravel(), f_l.ravel(), f_t.ravel(), f_lt.ravel(),
         total.ravel()])
    manifest.add_file(out / "forces.csv", rows)
    manifest.data["results"]["grid_shape"] = [gx[2], gt[2]]
