"""Backend dispatch for the hot integration kernels.

Public entry points take SystemParams and model names; the backend
modules work on flat float arrays.  Both backends implement identical
arithmetic; see benchmarks/bench_backends.py for a throughput
comparison.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .dynamics import model_dim
from .params import SystemParams

if backend.using_numba():
    from . import _kernels_numba as _impl
else:
    from . import _kernels_numpy as _impl

_MODEL_CODE = {"linear": 0, "full": 1, "collective": 2}


def _pad7(y0s: np.ndarray) -> np.ndarray:
    """Pad state vectors to the uniform 7-component kernel layout."""
    y0s = np.atleast_2d(np.asarray(y0s, dtype=np.float64))
    if y0s.shape[1] == 7:
        return y0s.copy()
    out = np.zeros((y0s.shape[0], 7))
    out[:, :y0s.shape[1]] = y0s
    out[:, 6] = -1.0  # inert for 6-dim models, ground state for full
    return out


def batch_integrate_sampled(model: str, y0s, params: SystemParams, dt: float,
                            n_steps: int, stride: int, t0: float = 0.0,
                            n_emitters: int = 1):
    """Integrate a batch of initial vectors, sampling every stride steps.

    Returns (times, samples (n, nsamp, dim), status (n,), t_bad (n,)).
    status 1 flags a non-finite state; t_bad carries the detection time.
    """
    code = _MODEL_CODE[model]
    dim = model_dim(model)
    raw, status, t_bad = _impl.batch_sampled(
        code, float(n_emitters), _pad7(y0s), float(dt), int(n_steps),
        int(stride), float(t0), *params.as_tuple())
    nsamp = raw.shape[1]
    times = t0 + dt * stride * np.arange(nsamp)
    return times, raw[:, :, :dim], status, t_bad


def batch_window_means(model: str, y0s, params: SystemParams, dt: float,
                       win_steps: int, n_win: int, t0: float = 0.0,
                       n_emitters: int = 1):
    """Integrate a batch over consecutive windows, returning per-window
    trapezoidal means of the position plus final states and a running
    maximum of |beta|^2 (saturation monitor).

    Returns (means (n, n_win), finals (n, dim), beta2_max (n,),
    status (n,), t_bad (n,)).
    """
    code = _MODEL_CODE[model]
    dim = model_dim(model)
    means, finals, b2, status, t_bad = _impl.batch_window_means(
        code, float(n_emitters), _pad7(y0s), float(dt), int(win_steps),
        int(n_win), float(t0), *params.as_tuple())
    return means, finals[:, :dim], b2, status, t_bad
