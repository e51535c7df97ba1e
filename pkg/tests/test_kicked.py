import math

import numpy as np
import pytest

from cavitywalk.errors import ConfigError
from cavitywalk.kicked import (ChaosScanRow, CombParams, KickedState,
                               chaos_scan, comb_drive, integrate_comb, k_eff,
                               physical_kick_strength, rhs_comb,
                               standard_map_run, standard_map_step)
from cavitywalk.params import SystemParams


def test_comb_drive_trivial_values():
    c = CombParams(n_f=0, delta=0.5, eta_t=0.3)
    ts = np.linspace(0, 20, 50)
    assert np.allclose(comb_drive(ts, c), 0.3)
    c8 = CombParams(n_f=8, delta=0.5, eta_t=0.3)
    assert comb_drive(0.0, c8) == pytest.approx(0.3 * 17.0)
    # removable singularity at the next comb peak
    assert comb_drive(c8.t_delta, c8) == pytest.approx(0.3 * 17.0, rel=1e-6)


def test_comb_drive_is_periodic():
    c = CombParams(n_f=5, delta=0.7, eta_t=1.0)
    ts = np.linspace(0.1, 5.0, 97)
    assert np.allclose(comb_drive(ts, c), comb_drive(ts + c.t_delta, c),
                       rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("n_f", [0, 2, 8, 32])
def test_comb_tooth_orthogonality(n_f):
    # integral over one period equals eta_t * T_delta for any comb width
    c = CombParams(n_f=n_f, delta=0.5, eta_t=0.4)
    n = 200_001
    ts = np.linspace(0, c.t_delta, n)
    integral = np.trapezoid(comb_drive(ts, c), ts)
    assert integral == pytest.approx(0.4 * c.t_delta, rel=1e-6)


def test_comb_params_validation():
    with pytest.raises(ConfigError):
        CombParams(n_f=-1, delta=0.5)
    with pytest.raises(ConfigError):
        CombParams(n_f=2, delta=0.0)


def test_free_dipole_rotates_without_drive():
    p = SystemParams(delta_a=-1.5, g=0.0)
    c = CombParams(n_f=0, delta=0.5, eta_t=0.0)
    xs, ps, bs = integrate_comb((0.0, 0.0, 1.0 + 0.5j), p, c, 0.01, 2000)
    assert np.allclose(np.abs(bs), abs(1.0 + 0.5j), rtol=1e-9)


def test_kick_impulse_concentrates_with_comb_width():
    # momentum transfer of one period concentrates into narrowing
    # windows around the comb peaks as N_f grows
    p = SystemParams(g=0.01, eta_t=0.1)
    widths = []
    for n_f in (2, 8, 32):
        c = CombParams(n_f=n_f, delta=2.0, eta_t=0.1)
        drive = np.abs(comb_drive(np.linspace(0, c.t_delta, 4001), c))
        # fraction of the period where the drive exceeds half its peak
        frac = np.mean(drive > 0.5 * drive.max())
        widths.append(frac)
    assert widths[0] > widths[1] > widths[2]


def test_standard_map_free_rotor_and_fixed_point():
    s = KickedState(x=1.0, p=0.3)
    s2 = standard_map_step(s, 0.0, omega_r=0.25, t_delta=2.0)
    assert s2.p == 0.3
    assert s2.x == pytest.approx(1.0 + 2 * 0.25 * 2.0 * 0.3)
    assert s2.n == 1
    origin = KickedState(x=0.0, p=0.0)
    for k in (0.5, 5.0):
        out = standard_map_step(origin, k)
        assert out.x == 0.0 and out.p == 0.0


def test_standard_map_area_preservation(rng):
    # |det J| = 1 via finite differences at random phase-space points
    eps = 1e-6
    for _ in range(50):
        x, p = rng.uniform(0, 2 * math.pi), rng.uniform(-3, 3)
        k = rng.uniform(0.1, 8.0)

        def step(xx, pp):
            s = standard_map_step(KickedState(x=xx, p=pp), k,
                                  omega_r=0.5, t_delta=1.0)
            return s.x, s.p

        x0, p0 = step(x, p)
        xpx, ppx = step(x + eps, p)
        xpp, ppp = step(x, p + eps)
        j11 = (xpx - x0) / eps
        j12 = (xpp - x0) / eps
        j21 = (ppx - p0) / eps
        j22 = (ppp - p0) / eps
        det = j11 * j22 - j12 * j21
        assert det == pytest.approx(1.0, abs=1e-6)


def test_quasilinear_diffusion_at_k5(rng):
    x0 = rng.uniform(0, 2 * math.pi, 20_000)
    p0 = rng.uniform(0, 2 * math.pi, 20_000)
    msd = standard_map_run(x0, p0, 5.0, 100)
    rate = np.polyfit(np.arange(101), msd, 1)[0]
    assert rate == pytest.approx(5.0 ** 2 / 2.0, rel=0.25)


def test_small_kick_is_bounded(rng):
    x0 = rng.uniform(0, 2 * math.pi, 5_000)
    p0 = rng.uniform(0, 2 * math.pi, 5_000)
    msd = standard_map_run(x0, p0, 0.1, 200)
    rate = np.polyfit(np.arange(201), msd, 1)[0]
    assert abs(rate) < 0.05 * (0.1 ** 2 / 2.0)


def test_chaos_scan_regimes_and_monotone_transition():
    rows = chaos_scan([0.5, 1.0, 2.0, 5.0], n_steps=150, ensemble_size=4000,
                      seed=17)
    regimes = [r.regime for r in rows]
    assert regimes[0] == "bounded"
    assert regimes[-1] == "diffusive"
    # once diffusive, stays diffusive as K grows
    first_diff = regimes.index("diffusive")
    assert all(r == "diffusive" for r in regimes[first_diff:])
    rates = [r.growth_rate for r in rows]
    assert rates[-1] > rates[0]


def test_chaos_scan_deterministic():
    a = chaos_scan([5.0], 50, 500, seed=3)[0]
    b = chaos_scan([5.0], 50, 500, seed=3)[0]
    assert a.growth_rate == b.growth_rate


def test_comb_ode_impulse_converges_to_map_kick():
    # per-period momentum impulse of the comb ODE approaches its wide-comb
    # limit monotonically as the comb widens
    p = SystemParams(delta_a=-1.5, g=0.01, eta_t=0.1, omega_r=1e-9)
    x_probe = 0.25  # quarter wavelength: maximal |df/dx|
    impulses = {}
    for n_f in (4, 16, 64, 256):
        c = CombParams(n_f=n_f, delta=2.0, eta_t=0.1)
        xs, ps, bs = integrate_comb((x_probe, 0.0, 0.0), p, c, 0.0005,
                                    int(round(c.t_delta / 0.0005)),
                                    t0=0.25 * c.t_delta)
        impulses[n_f] = ps[-1] - ps[0]
    limit = impulses[256]
    errs = [abs(impulses[n] - limit) for n in (4, 16, 64)]
    assert errs[0] > errs[1] > errs[2]


def test_k_eff_normalization():
    p = SystemParams(g=0.01, eta_t=0.1, omega_r=0.1)
    c = CombParams(n_f=4, delta=0.5, eta_t=0.1)
    assert physical_kick_strength(p) == pytest.approx(
        2 * p.eta_l * p.eta_bar_t)
    assert k_eff(p, c) == pytest.approx(
        2 * p.omega_r * c.t_delta * 2 * p.eta_l * p.eta_bar_t)
