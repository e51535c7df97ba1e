"""State containers: instantaneous dynamical state and sampled trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import SystemParams

# Component order used by the flat-vector kernels.  beta_z is appended as
# component 6 in full-model runs.
VEC_FIELDS = ("x", "p", "re_alpha", "im_alpha", "re_beta", "im_beta")


@dataclass
class DynState:
    """Instantaneous state of particle, cavity field and atomic dipole.

    x is the particle position in wavelength units (mode phase k*x), p the
    momentum in hbar*k.  beta_z is present only in full-model states;
    linearized runs keep it at None (conceptually pinned to -1).
    """

    x: float = 0.0
    p: float = 0.0
    alpha: complex = 0.0 + 0.0j
    beta: complex = 0.0 + 0.0j
    beta_z: float | None = None
    t: float = 0.0

    @property
    def has_inversion(self) -> bool:
        return self.beta_z is not None

    def to_vector(self) -> np.ndarray:
        v = [self.x, self.p, self.alpha.real, self.alpha.imag,
             self.beta.real, self.beta.imag]
        if self.beta_z is not None:
            v.append(self.beta_z)
        return np.asarray(v, dtype=np.float64)

    @classmethod
    def from_vector(cls, y, t: float = 0.0) -> "DynState":
        y = np.asarray(y, dtype=np.float64)
        beta_z = float(y[6]) if y.shape[0] > 6 else None
        return cls(
            x=float(y[0]),
            p=float(y[1]),
            alpha=complex(y[2], y[3]),
            beta=complex(y[4], y[5]),
            beta_z=beta_z,
            t=t,
        )


def initial_state(x: float = 0.0, p: float = 0.0, *, full: bool = False,
                  t: float = 0.0) -> DynState:
    """Default initial condition: empty cavity, unexcited dipole.

    alpha(0) = beta(0) = 0 and, for the full model, beta_z(0) = -1.  The
    cavity rings up on a 1/kappa timescale, negligible against the jump
    period.
    """
    return DynState(x=x, p=p, alpha=0j, beta=0j,
                    beta_z=-1.0 if full else None, t=t)


@dataclass
class Trajectory:
    """Uniformly sampled trajectory of a single run.

    samples has shape (n_samples, dim) in VEC_FIELDS order (+ beta_z when
    the model carries it); times is the matching strictly increasing time
    grid with uniform stride dt_out.
    """

    params: SystemParams
    dt_out: float
    times: np.ndarray
    samples: np.ndarray
    model: str = "linear"

    def __post_init__(self):
        if len(self.times) != len(self.samples):
            raise ValueError("times and samples length mismatch")
        if len(self.times) > 1:
            strides = np.diff(self.times)
            if not np.all(strides > 0):
                raise ValueError("times must be strictly increasing")
            if not np.allclose(strides, self.dt_out, rtol=1e-9, atol=1e-12):
                raise ValueError("non-uniform sample stride")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def x(self) -> np.ndarray:
        return self.samples[:, 0]

    @property
    def p(self) -> np.ndarray:
        return self.samples[:, 1]

    @property
    def alpha(self) -> np.ndarray:
        return self.samples[:, 2] + 1j * self.samples[:, 3]

    @property
    def beta(self) -> np.ndarray:
        return self.samples[:, 4] + 1j * self.samples[:, 5]

    @property
    def beta_z(self) -> np.ndarray | None:
        if self.samples.shape[1] > 6:
            return self.samples[:, 6]
        return None

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    def state_at(self, i: int) -> DynState:
        return DynState.from_vector(self.samples[i], t=float(self.times[i]))
