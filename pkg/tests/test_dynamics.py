import math

import numpy as np
import pytest

from cavitywalk.dynamics import (mode_df, mode_f, rhs_collective, rhs_full,
                                 rhs_linear)
from cavitywalk.params import SystemParams
from cavitywalk.state import DynState, initial_state


def test_mode_function_values():
    assert mode_f(0.0) == 1.0
    assert mode_df(0.0) == 0.0
    assert mode_f(math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert mode_df(math.pi / 2) == -1.0


def test_vacuum_fixed_point_of_full_model():
    # ground-state atom, empty cavity, no transverse drive: only the
    # longitudinal pump acts
    p = SystemParams(eta_t=0.0)
    s = initial_state(full=True)
    d = rhs_full(s, p)
    assert d.x == 0.0 and d.p == 0.0
    assert d.beta == 0.0 and d.beta_z == 0.0
    assert d.alpha == pytest.approx(p.eta_l)


def test_decoupled_cavity_fixed_point():
    p = SystemParams(g=0.0, eta_t=0.0)
    alpha_ss = p.eta_l / (p.kappa - 1j * p.delta_c)
    s = DynState(x=0.3, p=0.0, alpha=alpha_ss, beta=0j)
    d = rhs_linear(s, p)
    assert abs(d.alpha) < 1e-15


def test_zero_state_zero_drives_is_stationary():
    p = SystemParams(eta_l=0.0, eta_t=0.0)
    d = rhs_linear(DynState(), p)
    assert d.x == d.p == 0.0
    assert d.alpha == 0j and d.beta == 0j


def test_linear_equals_full_with_ground_inversion(rng):
    p = SystemParams()
    for _ in range(300):
        s = DynState(x=rng.uniform(-3, 3), p=rng.uniform(-1, 1),
                     alpha=complex(*rng.uniform(-1, 1, 2)),
                     beta=complex(*rng.uniform(-1, 1, 2)),
                     beta_z=-1.0, t=rng.uniform(0, 500))
        df = rhs_full(s, p)
        s_lin = DynState(x=s.x, p=s.p, alpha=s.alpha, beta=s.beta, t=s.t)
        dl = rhs_linear(s_lin, p)
        assert df.x == dl.x and df.p == dl.p
        assert df.alpha == dl.alpha
        assert df.beta == dl.beta


def test_collective_single_emitter_equals_linear(rng):
    p = SystemParams()
    for _ in range(300):
        s = DynState(x=rng.uniform(-3, 3), p=rng.uniform(-1, 1),
                     alpha=complex(*rng.uniform(-1, 1, 2)),
                     beta=complex(*rng.uniform(-1, 1, 2)),
                     t=rng.uniform(0, 500))
        dc = rhs_collective(s, p, 1)
        dl = rhs_linear(s, p)
        assert dc.alpha == dl.alpha and dc.beta == dl.beta
        assert dc.x == dl.x and dc.p == dl.p


def test_collective_drive_scales_with_emitter_number():
    p = SystemParams()
    s = DynState(x=0.0, p=0.0, alpha=0j, beta=0j, t=0.0)
    d = rhs_collective(s, p, 10)
    assert d.beta == pytest.approx(10.0 * p.eta_t)


def test_collective_rejects_zero_emitters():
    with pytest.raises(ValueError):
        rhs_collective(DynState(), SystemParams(), 0)


def test_force_vanishes_at_antinodes(rng):
    # df/dx = 0 at sites x = 0, 1/2, 1, ... for any field configuration
    p = SystemParams()
    for x in (0.0, 0.5, 1.0, -1.5):
        s = DynState(x=x, p=rng.uniform(-1, 1),
                     alpha=complex(*rng.uniform(-1, 1, 2)),
                     beta=complex(*rng.uniform(-1, 1, 2)))
        assert rhs_linear(s, p).p == pytest.approx(0.0, abs=1e-13)


def test_rhs_is_pure():
    p = SystemParams()
    s = DynState(x=0.1, p=0.2, alpha=0.3 + 0.4j, beta=0.05 - 0.02j, t=7.0)
    d1 = rhs_linear(s, p)
    d2 = rhs_linear(s, p)
    assert d1.to_vector().tobytes() == d2.to_vector().tobytes()
