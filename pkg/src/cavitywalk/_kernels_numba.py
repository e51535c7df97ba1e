"""Numba-compiled integration kernels: per-trajectory scalar RK4 loops,
parallel over ensemble members.  Mirrors _kernels_numpy exactly.

Model codes: 0 = linear, 1 = full (with inversion), 2 = collective.
Parameter vector order matches SystemParams.as_tuple():
(kappa, gamma, delta_a, delta_c, delta_t, eta_l, eta_t, g, omega_r, k).
"""

import numpy as np
from numba import njit, prange

_KW = dict(cache=True, fastmath=False)


@njit(inline="always", **_KW)
def _rhs(model, n_em, x, p, ar, ai, br, bi, bz, t,
         ka, ga, da, dc, dT, el, et, g, wr, k):
    ph = k * x
    f = np.cos(ph)
    dfdx = -k * np.sin(ph)
    ct = np.cos(dT * t)
    st = np.sin(dT * t)
    dx = 2.0 * wr * p
    dp = -2.0 * g * dfdx * (ar * bi - ai * br)
    dar = -ka * ar - dc * ai - g * f * br + el
    dai = -ka * ai + dc * ar - g * f * bi
    if model == 1:
        dbr = -ga * br - da * bi - g * f * ar * bz - et * bz * ct
        dbi = -ga * bi + da * br - g * f * ai * bz - et * bz * st
        dbz = (-2.0 * ga * (bz + 1.0)
               - 4.0 * g * f * (br * ar + bi * ai)
               - 4.0 * et * (br * ct + bi * st))
    elif model == 2:
        dbr = -ga * br - da * bi + g * n_em * f * ar + n_em * et * ct
        dbi = -ga * bi + da * br + g * n_em * f * ai + n_em * et * st
        dbz = 0.0
    else:
        dbr = -ga * br - da * bi + g * f * ar + et * ct
        dbi = -ga * bi + da * br + g * f * ai + et * st
        dbz = 0.0
    return dx, dp, dar, dai, dbr, dbi, dbz


@njit(inline="always", **_KW)
def _rk4(model, n_em, x, p, ar, ai, br, bi, bz, t, dt,
         ka, ga, da, dc, dT, el, et, g, wr, k):
    a1, b1, c1, d1, e1, f1, g1 = _rhs(model, n_em, x, p, ar, ai, br, bi, bz,
                                      t, ka, ga, da, dc, dT, el, et, g, wr, k)
    h = 0.5 * dt
    a2, b2, c2, d2, e2, f2, g2 = _rhs(model, n_em, x + h * a1, p + h * b1,
                                      ar + h * c1, ai + h * d1, br + h * e1,
                                      bi + h * f1, bz + h * g1, t + h,
                                      ka, ga, da, dc, dT, el, et, g, wr, k)
    a3, b3, c3, d3, e3, f3, g3 = _rhs(model, n_em, x + h * a2, p + h * b2,
                                      ar + h * c2, ai + h * d2, br + h * e2,
                                      bi + h * f2, bz + h * g2, t + h,
                                      ka, ga, da, dc, dT, el, et, g, wr, k)
    a4, b4, c4, d4, e4, f4, g4 = _rhs(model, n_em, x + dt * a3, p + dt * b3,
                                      ar + dt * c3, ai + dt * d3, br + dt * e3,
                                      bi + dt * f3, bz + dt * g3, t + dt,
                                      ka, ga, da, dc, dT, el, et, g, wr, k)
    s = dt / 6.0
    return (x + s * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
            p + s * (b1 + 2.0 * b2 + 2.0 * b3 + b4),
            ar + s * (c1 + 2.0 * c2 + 2.0 * c3 + c4),
            ai + s * (d1 + 2.0 * d2 + 2.0 * d3 + d4),
            br + s * (e1 + 2.0 * e2 + 2.0 * e3 + e4),
            bi + s * (f1 + 2.0 * f2 + 2.0 * f3 + f4),
            bz + s * (g1 + 2.0 * g2 + 2.0 * g3 + g4))


@njit(inline="always", **_KW)
def _finite7(x, p, ar, ai, br, bi, bz):
    s = x + p + ar + ai + br + bi + bz
    return np.isfinite(s)


@njit(parallel=True, **_KW)
def batch_sampled(model, n_em, y0s, dt, n_steps, stride, t0,
                  ka, ga, da, dc, dT, el, et, g, wr, k):
    """Integrate a batch, storing every stride-th state.

    Returns (samples (n, nsamp, 7), status (n,), t_bad (n,)).
    """
    n = y0s.shape[0]
    nsamp = n_steps // stride + 1
    out = np.zeros((n, nsamp, 7))
    status = np.zeros(n, dtype=np.int64)
    t_bad = np.zeros(n)
    for i in prange(n):
        x = y0s[i, 0]
        p = y0s[i, 1]
        ar = y0s[i, 2]
        ai = y0s[i, 3]
        br = y0s[i, 4]
        bi = y0s[i, 5]
        bz = y0s[i, 6]
        out[i, 0, 0] = x
        out[i, 0, 1] = p
        out[i, 0, 2] = ar
        out[i, 0, 3] = ai
        out[i, 0, 4] = br
        out[i, 0, 5] = bi
        out[i, 0, 6] = bz
        row = 1
        for s in range(n_steps):
            t = t0 + s * dt
            x, p, ar, ai, br, bi, bz = _rk4(
                model, n_em, x, p, ar, ai, br, bi, bz, t, dt,
                ka, ga, da, dc, dT, el, et, g, wr, k)
            if (s + 1) % stride == 0 and row < nsamp:
                if not _finite7(x, p, ar, ai, br, bi, bz):
                    status[i] = 1
                    t_bad[i] = t + dt
                    break
                out[i, row, 0] = x
                out[i, row, 1] = p
                out[i, row, 2] = ar
                out[i, row, 3] = ai
                out[i, row, 4] = br
                out[i, row, 5] = bi
                out[i, row, 6] = bz
                row += 1
    return out, status, t_bad


@njit(parallel=True, **_KW)
def batch_window_means(model, n_em, y0s, dt, win_steps, n_win, t0,
                       ka, ga, da, dc, dT, el, et, g, wr, k):
    """Integrate a batch over n_win windows of win_steps steps each,
    accumulating the trapezoidal mean of x per window (streaming, no
    full trajectory storage).

    Returns (means (n, n_win), finals (n, 7), beta2_max (n,),
    status (n,), t_bad (n,)).
    """
    n = y0s.shape[0]
    means = np.zeros((n, n_win))
    finals = np.zeros((n, 7))
    beta2_max = np.zeros(n)
    status = np.zeros(n, dtype=np.int64)
    t_bad = np.zeros(n)
    for i in prange(n):
        x = y0s[i, 0]
        p = y0s[i, 1]
        ar = y0s[i, 2]
        ai = y0s[i, 3]
        br = y0s[i, 4]
        bi = y0s[i, 5]
        bz = y0s[i, 6]
        b2m = br * br + bi * bi
        step = 0
        for w in range(n_win):
            acc = 0.0
            for s in range(win_steps):
                t = t0 + step * dt
                x_old = x
                x, p, ar, ai, br, bi, bz = _rk4(
                    model, n_em, x, p, ar, ai, br, bi, bz, t, dt,
                    ka, ga, da, dc, dT, el, et, g, wr, k)
                acc += 0.5 * (x_old + x) * dt
                b2 = br * br + bi * bi
                if b2 > b2m:
                    b2m = b2
                step += 1
            if not _finite7(x, p, ar, ai, br, bi, bz):
                status[i] = 1
                t_bad[i] = t0 + step * dt
                break
            means[i, w] = acc / (win_steps * dt)
        finals[i, 0] = x
        finals[i, 1] = p
        finals[i, 2] = ar
        finals[i, 3] = ai
        finals[i, 4] = br
        finals[i, 5] = bi
        finals[i, 6] = bz
        beta2_max[i] = b2m
    return means, finals, beta2_max, status, t_bad
