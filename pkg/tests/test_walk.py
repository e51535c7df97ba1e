import numpy as np
import pytest

from cavitywalk.errors import (ConfigError, DegenerateSequenceError,
                               EmptySubpopulationError, InvalidRegimeError,
                               UndersampledWindowError)
from cavitywalk.params import SystemParams
from cavitywalk.state import Trajectory
from cavitywalk.walk import (aggregate_walks, autocorrelation, discretize,
                             ensemble_run, mixing_report, round_to_site,
                             sample_initial_conditions, thermal_init_sampler,
                             window_means)


def _flat_traj(x_value, duration=250.0, dt_out=0.5):
    n = int(duration / dt_out) + 1
    times = dt_out * np.arange(n)
    samples = np.zeros((n, 6))
    samples[:, 0] = x_value
    return Trajectory(params=SystemParams(), dt_out=dt_out, times=times,
                      samples=samples)


def test_round_to_site_rule():
    assert round_to_site(0.26) == 0.5
    assert round_to_site(-0.26) == -0.5
    assert round_to_site(0.24) == 0.0
    # ties round half away from zero
    assert round_to_site(0.25) == 0.5
    assert round_to_site(-0.25) == -0.5
    assert round_to_site(0.75) == 1.0
    # integer-lattice comparison variant
    assert round_to_site(0.6, "integer") == 1.0
    assert round_to_site(0.4, "integer") == 0.0


def test_discretize_constant_trajectories():
    walk = discretize(_flat_traj(0.0), 100.0)
    assert np.all(walk.sites == 0.0)
    assert np.all(walk.jumps == 0.0)
    walk = discretize(_flat_traj(0.26), 100.0)
    assert np.all(walk.sites[1:] == 0.5)
    assert len(walk.jumps) == len(walk.sites) - 1


def test_discretize_needs_two_periods():
    with pytest.raises(UndersampledWindowError):
        discretize(_flat_traj(0.0, duration=150.0), 100.0)


def test_window_means_requires_enough_samples():
    times = np.arange(0, 300.0, 25.0)
    with pytest.raises(UndersampledWindowError):
        window_means(times, np.zeros_like(times), 100.0)


def test_window_means_stride_must_divide_period():
    times = np.arange(0, 300.0, 0.7)
    with pytest.raises(ConfigError):
        window_means(times, np.zeros_like(times), 100.0)


def test_autocorrelation_alternating_sequence():
    jumps = np.tile([0.5, -0.5], 20)
    c = autocorrelation(jumps, 4)
    assert c.values[0] == 1.0
    assert c.values[1] == pytest.approx(-1.0)
    assert c.values[2] == pytest.approx(1.0)


def test_autocorrelation_iid_jumps(rng):
    jumps = rng.choice([-0.5, 0.5], size=10_000)
    c = autocorrelation(jumps, 10)
    assert c.values[0] == 1.0
    assert np.all(np.abs(c.values[1:]) < 3.0 / np.sqrt(len(jumps)))


def test_autocorrelation_degenerate_and_bounds():
    with pytest.raises(DegenerateSequenceError):
        autocorrelation(np.full(20, 0.5), 3)
    with pytest.raises(ConfigError):
        autocorrelation(np.array([0.5, -0.5, 0.5, -0.5]), 3)


def test_synthetic_pipeline_recovers_fair_walk(rng):
    # analysis pipeline on ideal i.i.d. +-1/2 jumps: slope 1/4, flat
    # correlations: the oracle is independent of any dynamics
    n_traj, n_steps = 400, 100
    jumps = rng.choice([-0.5, 0.5], size=(n_traj, n_steps))
    walks = np.concatenate([np.zeros((n_traj, 1)), np.cumsum(jumps, axis=1)],
                           axis=1)
    inits = np.zeros((n_traj, 2))
    stats = aggregate_walks(walks, 250.0, inits)
    mc_err = 3.0 * 0.25 / np.sqrt(n_traj)
    assert abs(stats.slope - 0.25) < mc_err
    assert np.all(np.abs(stats.corr.values[1:]) < 4.0 / np.sqrt(n_steps))
    assert stats.hist_counts.sum() == n_traj
    # unbiased walk: ensemble mean displacement consistent with zero
    assert abs(stats.hist_mean) < 3.0 * np.sqrt(0.25 * n_steps / n_traj)


def test_thermal_sampler_widths(rng):
    p = SystemParams(delta_a=1.5, g=0.1, eta_l=10.0)  # U0 > 0
    assert p.u0 * p.eta_l ** 2 > 0
    draws = np.array([thermal_init_sampler(p, rng) for _ in range(100_000)])
    dx_target = 1.0 / np.sqrt(2.0 * p.u0) / p.eta_l / p.k
    dp_target = 1.0 / np.sqrt(2.0 * p.omega_r)
    assert np.std(draws[:, 0]) == pytest.approx(dx_target, rel=0.02)
    assert np.std(draws[:, 1]) == pytest.approx(dp_target, rel=0.02)


def test_thermal_sampler_formula_values(rng):
    # omega_r = 0.5 -> dp0 = 1; U0*eta_l^2 = 50 -> dx0 = 0.1 in phase units
    p = SystemParams(delta_a=2.0, g=1.0, eta_l=10.0, omega_r=0.5)
    assert p.u0 * p.eta_l ** 2 == pytest.approx(50.0)
    draws = np.array([thermal_init_sampler(p, rng) for _ in range(50_000)])
    assert np.std(draws[:, 1]) == pytest.approx(1.0, rel=0.02)
    assert np.std(draws[:, 0]) * p.k == pytest.approx(0.1, rel=0.02)


def test_thermal_sampler_invalid_regime(rng):
    p = SystemParams()  # delta_a < 0 -> U0 < 0
    with pytest.raises(InvalidRegimeError):
        thermal_init_sampler(p, rng)


def test_initial_condition_streams_are_stable():
    a = sample_initial_conditions(16, (0.1, 0.1), 99)
    b = sample_initial_conditions(16, (0.1, 0.1), 99)
    assert np.array_equal(a, b)
    c = sample_initial_conditions(16, (0.1, 0.1), 100)
    assert not np.array_equal(a, c)
    assert np.all(np.abs(a[:, 0]) <= 0.1)


def test_mixing_report_trivial_cases():
    inits = np.zeros((6, 2))
    inits[:3, 0] = 0.05
    inits[3:, 0] = -0.05
    walks = np.zeros((6, 11))
    stats = aggregate_walks(walks, 100.0, inits)
    rep = mixing_report(stats)
    assert rep["overlap"] == pytest.approx(1.0)
    assert rep["mean_difference"] == 0.0
    # disjoint final distributions
    walks2 = np.zeros((6, 11))
    walks2[:3, -1] = 2.0
    walks2[3:, -1] = -2.0
    rep2 = mixing_report(aggregate_walks(walks2, 100.0, inits))
    assert rep2["overlap"] == 0.0
    assert rep2["mean_difference"] == pytest.approx(4.0)


def test_mixing_report_requires_both_signs():
    inits = np.zeros((4, 2))
    inits[:, 0] = 0.05
    stats = aggregate_walks(np.zeros((4, 5)), 100.0, inits)
    with pytest.raises(EmptySubpopulationError):
        mixing_report(stats)


def test_ensemble_without_drive_stays_put():
    # eta_t = 0, particles resting at the stable site: no jumps at all
    p = SystemParams(eta_t=0.0, g=0.1).with_period(20.0)
    stats = ensemble_run(p, (0.0, 0.0), 4, 5, master_seed=1, dt=0.05)
    assert np.all(stats.walks == 0.0)
    assert np.all(stats.msd == 0.0)
    assert stats.n_degenerate == 4


def test_ensemble_run_is_deterministic_across_workers():
    p = SystemParams(g=0.1).with_period(20.0)
    a = ensemble_run(p, (0.1, 0.1), 6, 4, master_seed=3, dt=0.05, workers=1)
    b = ensemble_run(p, (0.1, 0.1), 6, 4, master_seed=3, dt=0.05, workers=2)
    assert a.walks.tobytes() == b.walks.tobytes()
    assert a.msd.tobytes() == b.msd.tobytes()
    assert a.slope == b.slope


def test_ensemble_dt_must_divide_period():
    p = SystemParams(g=0.1).with_period(20.0)
    with pytest.raises(ConfigError):
        ensemble_run(p, (0.1, 0.1), 2, 2, master_seed=3, dt=0.3)
