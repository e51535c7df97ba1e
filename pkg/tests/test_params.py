import math

import pytest

from cavitywalk.errors import ConfigError, SingularDetuningError
from cavitywalk.params import SystemParams, figure_params


def test_defaults_are_walk_study_values():
    p = SystemParams()
    assert p.kappa == 1.0
    assert p.delta_a == p.delta_c == -1.5
    assert p.eta_l == 1.0
    assert p.eta_t == 0.55
    assert p.omega_r == 0.1
    assert p.k == pytest.approx(2.0 * math.pi)


def test_derived_quantities():
    p = SystemParams(g=0.01)
    assert p.u0 == pytest.approx(1e-4 / -1.5)
    assert p.eta_bar_t == pytest.approx(0.01 * 0.55 / -1.5)
    assert p.phi_delta == pytest.approx(math.atan(-1.5))
    assert p.jump_period == pytest.approx(100.0)


def test_with_period_round_trips():
    p = SystemParams().with_period(250.0)
    assert p.jump_period == pytest.approx(250.0)
    assert p.delta_t == pytest.approx(math.pi / 250.0)


@pytest.mark.parametrize("bad", [
    dict(kappa=0.0), dict(kappa=-1.0), dict(gamma=-0.1), dict(g=-1e-3),
    dict(eta_l=-1.0), dict(eta_t=-0.2), dict(omega_r=0.0), dict(k=-1.0),
])
def test_invariants_rejected(bad):
    with pytest.raises(ConfigError):
        SystemParams(**bad)


def test_zero_detuning_is_singular_for_derived():
    p = SystemParams(delta_a=0.0)
    with pytest.raises(SingularDetuningError):
        _ = p.u0
    with pytest.raises(SingularDetuningError):
        _ = p.eta_bar_t


def test_jump_period_requires_beat():
    p = SystemParams(delta_t=0.0)
    with pytest.raises(ConfigError):
        _ = p.jump_period


def test_figure_params_period_override():
    p = figure_params(period=250.0, eta_t=0.3)
    assert p.jump_period == pytest.approx(250.0)
    assert p.eta_t == 0.3
