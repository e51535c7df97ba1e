import numpy as np
import pytest

from cavitywalk import _kernels_numpy
from cavitywalk import kernels
from cavitywalk.backend import using_numba
from cavitywalk.params import SystemParams
from cavitywalk.state import initial_state
from cavitywalk.walk import window_means


def _y0_batch(n, dim, seed=5):
    rng = np.random.default_rng(seed)
    y = np.zeros((n, dim))
    y[:, 0] = rng.uniform(-0.1, 0.1, n)
    y[:, 1] = rng.uniform(-0.1, 0.1, n)
    if dim == 7:
        y[:, 6] = -1.0
    return y


@pytest.mark.parametrize("model,dim", [("linear", 6), ("full", 7),
                                       ("collective", 6)])
def test_backends_agree_on_short_horizon(model, dim):
    if not using_numba():
        pytest.skip("single-backend environment")
    p = SystemParams()
    y0 = _y0_batch(4, dim)
    args = (model, y0, p, 0.01, 500, 100)
    _, fast, st1, _ = kernels.batch_integrate_sampled(*args, n_emitters=5)
    raw, st2, _ = _kernels_numpy.batch_sampled(
        {"linear": 0, "full": 1, "collective": 2}[model], 5.0,
        kernels._pad7(y0), 0.01, 500, 100, 0.0, *p.as_tuple())
    assert np.all(st1 == 0) and np.all(st2 == 0)
    assert np.allclose(fast, raw[:, :, :dim], rtol=1e-10, atol=1e-13)


def test_window_means_match_offline_trapezoid():
    # streaming window means inside the kernel equal trapezoidal means
    # computed from a densely sampled trajectory
    p = SystemParams()
    y0 = _y0_batch(2, 6)
    dt, win_steps, n_win = 0.01, 2_000, 3
    means, finals, b2, status, _ = kernels.batch_window_means(
        "linear", y0, p, dt, win_steps, n_win)
    assert np.all(status == 0)
    times, samples, st2, _ = kernels.batch_integrate_sampled(
        "linear", y0, p, dt, win_steps * n_win, 1)
    for i in range(2):
        offline = window_means(times, samples[i, :, 0], win_steps * dt)
        assert np.allclose(means[i], offline, rtol=1e-10, atol=1e-12)
    assert np.all(b2 > 0)


def test_worker_count_does_not_change_bits():
    from cavitywalk.backend import set_worker_threads
    p = SystemParams()
    y0 = _y0_batch(8, 6)
    set_worker_threads(1)
    m1 = kernels.batch_window_means("linear", y0, p, 0.01, 1000, 2)[0]
    set_worker_threads(2)
    m2 = kernels.batch_window_means("linear", y0, p, 0.01, 1000, 2)[0]
    assert m1.tobytes() == m2.tobytes()


def test_divergence_is_flagged_not_raised():
    # force a blow-up with an absurd step size
    p = SystemParams()
    y0 = _y0_batch(1, 6)
    _, _, status, t_bad = kernels.batch_integrate_sampled(
        "linear", y0, p, 1e6, 10, 1)
    assert status[0] == 1
    assert t_bad[0] > 0
