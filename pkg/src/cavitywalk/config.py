"""Declarative run configuration: strict TOML parsing, validation with
field diagnostics, and a round-trippable emitter for the resolved form.

Unknown keys are rejected everywhere.  The jump period may be given
either as walk.T or walk.delta_t (mutually exclusive); the resolved
configuration carries both, one derived from the other.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field, asdict

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .errors import ConfigError
from .langevin import KERNEL_KINDS, LangevinParams, NoiseKernel
from .params import SystemParams

KINDS = ("trajectory", "ensemble", "langevin", "comb-scan", "force-profile")
MODELS = ("linear", "full", "collective")

_TOP_KEYS = {"kind", "master_seed", "out_dir", "workers", "model",
             "n_emitters", "params", "integration", "walk", "langevin",
             "comb", "grid"}
_PARAMS_KEYS = {"kappa", "gamma", "delta_a", "delta_c", "eta_l", "eta_t",
                "g", "omega_r", "k"}
_INTEGRATION_KEYS = {"dt", "t_end", "sample_stride"}
_WALK_KEYS = {"T", "delta_t", "n_steps", "n_traj", "init", "box",
              "rounding", "tau_max"}
_LANGEVIN_KEYS = {"kind", "d", "sigma", "omega", "lambda_damp", "dt",
                  "t_end", "n_realizations", "n_report"}
_COMB_KEYS = {"k_eff_values", "n_kicks", "ensemble_size"}
_GRID_KEYS = {"x", "t"}

_BLOCKS_BY_KIND = {
    "trajectory": ({"params", "integration"}, {"walk"}),
    "ensemble": ({"params", "walk"}, {"integration"}),
    "langevin": ({"langevin"}, set()),
    "comb-scan": ({"comb"}, set()),
    "force-profile": ({"params", "grid"}, {"walk"}),
}


def _check_unknown(d: dict, allowed: set, where: str):
    unknown = sorted(set(d) - allowed)
    if unknown:
        keys = ", ".join(f"{where}.{k}" if where else k for k in unknown)
        raise ConfigError(f"unknown key(s): {keys}")


def _missing(d: dict, required, where: str):
    return [f"{where}.{k}" if where else k for k in required if k not in d]


def _num(d: dict, key: str, where: str, default=None):
    if key not in d:
        if default is None:
            raise ConfigError(f"missing field {where}.{key}")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number")
    return float(v)


def _int(d: dict, key: str, where: str, default=None):
    if key not in d:
        if default is None:
            raise ConfigError(f"missing field {where}.{key}")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where}.{key} must be an integer")
    return int(v)


@dataclass(frozen=True)
class WalkConfig:
    period: float
    n_steps: int = 100
    n_traj: int = 1000
    init: str = "box"
    box: tuple = (0.1, 0.1)
    rounding: str = "half"
    tau_max: int | None = None


@dataclass(frozen=True)
class TrajectoryConfig:
    dt: float = 0.01
    t_end: float = 10000.0
    sample_stride: int = 1


@dataclass(frozen=True)
class CombScanConfig:
    k_eff_values: tuple
    n_kicks: int = 200
    ensemble_size: int = 10000


@dataclass(frozen=True)
class GridConfig:
    x: tuple = (-0.5, 0.5, 201)
    t: tuple = (0.0, 200.0, 101)


@dataclass(frozen=True)
class RunConfig:
    kind: str
    master_seed: int
    out_dir: str | None = None
    workers: int | None = None
    model: str = "linear"
    n_emitters: int = 1
    params: SystemParams | None = None
    dt: float = 0.01
    trajectory: TrajectoryConfig | None = None
    walk: WalkConfig | None = None
    langevin: LangevinParams | None = None
    comb: CombScanConfig | None = None
    grid: GridConfig | None = None
    n_report: int = 50


def _parse_params(block: dict, period: float | None,
                  delta_t: float | None) -> SystemParams:
    if "delta_t" in block:
        raise ConfigError("params.delta_t is set through walk.delta_t")
    _check_unknown(block, _PARAMS_KEYS, "params")
    if delta_t is None:
        delta_t = math.pi / period if period else 0.0
    kw = {k: _num(block, k, "params", default=getattr(SystemParams, k))
          for k in _PARAMS_KEYS}
    return SystemParams(delta_t=delta_t, **kw)


def _parse_walk_period(walk: dict):
    has_t = "T" in walk
    has_d = "delta_t" in walk
    if has_t and has_d:
        raise ConfigError("walk.T and walk.delta_t are mutually exclusive")
    if not has_t and not has_d:
        raise ConfigError("one of walk.T or walk.delta_t is required")
    if has_t:
        period = _num(walk, "T", "walk")
        if not period > 0:
            raise ConfigError("walk.T must be > 0")
        return period, math.pi / period
    delta_t = _num(walk, "delta_t", "walk")
    if delta_t == 0.0:
        raise ConfigError("walk.delta_t must be nonzero")
    return math.pi / delta_t, delta_t


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML run configuration."""
    try:
        raw = _toml.loads(text)
    except _toml.TOMLDecodeError as e:
        raise ConfigError(f"TOML syntax error: {e}") from None

    _check_unknown(raw, _TOP_KEYS, "")
    missing = _missing(raw, ("kind", "master_seed"), "")
    kind = raw.get("kind")
    if kind is not None and kind not in KINDS:
        raise ConfigError(f"kind must be one of {KINDS}, got {kind!r}")
    if kind is not None:
        required, optional = _BLOCKS_BY_KIND[kind]
        missing += _missing(raw, sorted(required), "")
        for blk in ("params", "integration", "walk", "langevin", "comb",
                    "grid"):
            if blk in raw and blk not in required | optional:
                raise ConfigError(
                    f"block [{blk}] is not used by kind {kind!r}")
    if missing:
        raise ConfigError("missing required field(s): " + ", ".join(missing))

    master_seed = _int(raw, "master_seed", "")
    model = raw.get("model", "linear")
    if model not in MODELS:
        raise ConfigError(f"model must be one of {MODELS}, got {model!r}")
    n_emitters = _int(raw, "n_emitters", "", default=1)
    if model == "collective" and n_emitters < 1:
        raise ConfigError("collective model requires n_emitters >= 1")
    if n_emitters < 1:
        raise ConfigError("n_emitters must be >= 1")
    out_dir = raw.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        raise ConfigError("out_dir must be a string")
    workers = _int(raw, "workers", "", default=0) or None

    walk_cfg = None
    period = None
    delta_t = None
    if "walk" in raw:
        wb = raw["walk"]
        _check_unknown(wb, _WALK_KEYS, "walk")
        period, delta_t = _parse_walk_period(wb)
        init = wb.get("init", "box")
        if init not in ("box", "thermal"):
            raise ConfigError("walk.init must be 'box' or 'thermal'")
        box = wb.get("box", [0.1, 0.1])
        if (not isinstance(box, list) or len(box) != 2
                or not all(isinstance(v, (int, float)) for v in box)):
            raise ConfigError("walk.box must be [x_half_width, p_half_width]")
        rounding = wb.get("rounding", "half")
        if rounding not in ("half", "integer"):
            raise ConfigError("walk.rounding must be 'half' or 'integer'")
        tau_max = _int(wb, "tau_max", "walk", default=0) or None
        walk_cfg = WalkConfig(period=period,
                              n_steps=_int(wb, "n_steps", "walk", default=100),
                              n_traj=_int(wb, "n_traj", "walk", default=1000),
                              init=init, box=(float(box[0]), float(box[1])),
                              rounding=rounding, tau_max=tau_max)
        if walk_cfg.n_steps < 1 or walk_cfg.n_traj < 1:
            raise ConfigError("walk.n_steps and walk.n_traj must be >= 1")

    params = None
    if "params" in raw:
        params = _parse_params(raw["params"], period, delta_t)

    dt = 0.01
    traj_cfg = None
    if "integration" in raw:
        ib = raw["integration"]
        _check_unknown(ib, _INTEGRATION_KEYS, "integration")
        dt = _num(ib, "dt", "integration", default=0.01)
        if not dt > 0:
            raise ConfigError("integration.dt must be > 0")
        if kind == "trajectory":
            traj_cfg = TrajectoryConfig(
                dt=dt,
                t_end=_num(ib, "t_end", "integration"),
                sample_stride=_int(ib, "sample_stride", "integration",
                                   default=1))
            if traj_cfg.sample_stride < 1:
                raise ConfigError("integration.sample_stride must be >= 1")
            if not traj_cfg.t_end > 0:
                raise ConfigError("integration.t_end must be > 0")
        else:
            extra = set(ib) - {"dt"}
            if extra:
                raise ConfigError(
                    "integration block for this kind accepts only dt; "
                    f"remove {sorted(extra)}")
    elif kind == "trajectory":
        raise ConfigError("missing required field(s): integration.t_end")

    langevin_cfg = None
    if "langevin" in raw:
        lb = raw["langevin"]
        _check_unknown(lb, _LANGEVIN_KEYS, "langevin")
        kkind = lb.get("kind", "delta")
        if kkind not in KERNEL_KINDS:
            raise ConfigError(
                f"langevin.kind must be one of {KERNEL_KINDS}, got {kkind!r}")
        sigma = _num(lb, "sigma", "langevin", default=0.5)
        kernel = NoiseKernel(kind=kkind, d=_num(lb, "d", "langevin",
                                                default=0.125),
                             sigma=None if kkind == "delta" else sigma,
                             omega=_num(lb, "omega", "langevin", default=0.0))
        langevin_cfg = (LangevinParams(
            lambda_damp=_num(lb, "lambda_damp", "langevin", default=1.0),
            kernel=kernel,
            dt=_num(lb, "dt", "langevin", default=0.01),
            t_end=_num(lb, "t_end", "langevin", default=20.0),
            n_realizations=_int(lb, "n_realizations", "langevin",
                                default=2000),
            master_seed=master_seed),
            _int(lb, "n_report", "langevin", default=50))

    comb_cfg = None
    if "comb" in raw:
        cb = raw["comb"]
        _check_unknown(cb, _COMB_KEYS, "comb")
        if "k_eff_values" not in cb:
            raise ConfigError("missing field comb.k_eff_values")
        kv = cb["k_eff_values"]
        if (not isinstance(kv, list) or not kv
                or not all(isinstance(v, (int, float)) for v in kv)):
            raise ConfigError("comb.k_eff_values must be a nonempty number list")
        comb_cfg = CombScanConfig(
            k_eff_values=tuple(float(v) for v in kv),
            n_kicks=_int(cb, "n_kicks", "comb", default=200),
            ensemble_size=_int(cb, "ensemble_size", "comb", default=10000))

    grid_cfg = None
    if "grid" in raw:
        gb = raw["grid"]
        _check_unknown(gb, _GRID_KEYS, "grid")
        def axis(key, default):
            v = gb.get(key, list(default))
            if (not isinstance(v, list) or len(v) != 3
                    or not all(isinstance(u, (int, float)) for u in v)):
                raise ConfigError(f"grid.{key} must be [min, max, n]")
            if int(v[2]) < 2 or v[1] <= v[0]:
                raise ConfigError(f"grid.{key} needs max > min and n >= 2")
            return (float(v[0]), float(v[1]), int(v[2]))
        grid_cfg = GridConfig(x=axis("x", GridConfig.x),
                              t=axis("t", GridConfig.t))

    lg, nrep = (langevin_cfg if langevin_cfg else (None, 50))
    return RunConfig(kind=kind, master_seed=master_seed, out_dir=out_dir,
                     workers=workers, model=model, n_emitters=n_emitters,
                     params=params, dt=dt, trajectory=traj_cfg, walk=walk_cfg,
                     langevin=lg, comb=comb_cfg, grid=grid_cfg,
                     n_report=nrep)


# -- emission ---------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(u) for u in v) + "]"
    raise TypeError(f"cannot format {type(v)}")


def emit_config(cfg: RunConfig) -> str:
    """Serialize a RunConfig back to strict TOML.

    The output re-parses to an equivalent configuration; derived
    quantities are included as comments.
    """
    lines = [f"kind = {_fmt(cfg.kind)}",
             f"master_seed = {_fmt(cfg.master_seed)}"]
    if cfg.out_dir is not None:
        lines.append(f"out_dir = {_fmt(cfg.out_dir)}")
    if cfg.workers is not None:
        lines.append(f"workers = {_fmt(cfg.workers)}")
    lines.append(f"model = {_fmt(cfg.model)}")
    if cfg.model == "collective":
        lines.append(f"n_emitters = {_fmt(cfg.n_emitters)}")

    if cfg.params is not None:
        p = cfg.params
        lines += ["", "[params]"]
        for k in sorted(_PARAMS_KEYS):
            lines.append(f"{k} = {_fmt(getattr(p, k))}")
        lines.append(f"# derived: u0 = {p.u0!r}, eta_bar_t = {p.eta_bar_t!r}, "
                     f"phi_delta = {p.phi_delta!r}")
        if p.delta_t != 0.0:
            lines.append(f"# derived: delta_t = {p.delta_t!r}, "
                         f"T = {p.jump_period!r}")

    if cfg.trajectory is not None:
        tcf = cfg.trajectory
        lines += ["", "[integration]", f"dt = {_fmt(tcf.dt)}",
                  f"t_end = {_fmt(tcf.t_end)}",
                  f"sample_stride = {_fmt(tcf.sample_stride)}"]
    elif cfg.kind == "ensemble":
        lines += ["", "[integration]", f"dt = {_fmt(cfg.dt)}"]

    if cfg.walk is not None:
        w = cfg.walk
        lines += ["", "[walk]", f"T = {_fmt(w.period)}",
                  f"# derived: delta_t = {math.pi / w.period!r}",
                  f"n_steps = {_fmt(w.n_steps)}", f"n_traj = {_fmt(w.n_traj)}",
                  f"init = {_fmt(w.init)}", f"box = {_fmt(list(w.box))}",
                  f"rounding = {_fmt(w.rounding)}"]
        if w.tau_max is not None:
            lines.append(f"tau_max = {_fmt(w.tau_max)}")

    if cfg.langevin is not None:
        lp = cfg.langevin
        lines += ["", "[langevin]", f"kind = {_fmt(lp.kernel.kind)}",
                  f"d = {_fmt(lp.kernel.d)}"]
        if lp.kernel.sigma is not None:
            lines.append(f"sigma = {_fmt(lp.kernel.sigma)}")
        lines += [f"omega = {_fmt(lp.kernel.omega)}",
                  f"lambda_damp = {_fmt(lp.lambda_damp)}",
                  f"dt = {_fmt(lp.dt)}", f"t_end = {_fmt(lp.t_end)}",
                  f"n_realizations = {_fmt(lp.n_realizations)}",
                  f"n_report = {_fmt(cfg.n_report)}"]

    if cfg.comb is not None:
        cb = cfg.comb
        lines += ["", "[comb]",
                  f"k_eff_values = {_fmt(list(cb.k_eff_values))}",
                  f"n_kicks = {_fmt(cb.n_kicks)}",
                  f"ensemble_size = {_fmt(cb.ensemble_size)}"]

    if cfg.grid is not None:
        lines += ["", "[grid]", f"x = {_fmt(list(cfg.grid.x))}",
                  f"t = {_fmt(list(cfg.grid.t))}"]
    return "\n".join(lines) + "\n"
