"""Spin motion in a time-dependent field.

Quantum side: i d/dt |psi> = -a(t).J |psi>, integrated by fixed-step RK4.
Classical side: dn/dt = n x a(t) (the sign that keeps a coherent initial
state coherent along the classical trajectory).  Norm drift is monitored,
never hidden by renormalization.
"""

import math
from dataclasses import dataclass

import numpy as np

from .su2 import SpinRep, SpherePoint, coherent_state_batch


class NormDriftError(RuntimeError):
    """Integrator norm drift exceeded the rejection threshold."""


def constant_field(a):
    a = np.asarray(a, dtype=float)
    return lambda t: a


def rotating_field(amplitude: float = 1.0, omega: float = 1.0,
                   a3: float = 2.0):
    """a(t) = (A cos(w t), A sin(w t), a3)."""
    def f(t):
        return np.array([amplitude * math.cos(omega * t),
                         amplitude * math.sin(omega * t), a3])
    return f


def chirped_field(amplitude: float = 1.0, rate: float = 0.1,
                  a3: float = 2.0):
    """a(t) = (A cos(r t^2 / 2), A sin(r t^2 / 2), a3)."""
    def f(t):
        ph = 0.5 * rate * t * t
        return np.array([amplitude * math.cos(ph),
                         amplitude * math.sin(ph), a3])
    return f


def sampled_field(times, values):
    """Linear interpolation between time samples (3 columns)."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.shape != (len(times), 3):
        raise ValueError("field samples must have shape (n_times, 3)")

    def f(t):
        return np.array([np.interp(t, times, values[:, i]) for i in range(3)])

    return f


def _rk4(deriv, y0, t_end, dt):
    n_steps = int(round(t_end / dt))
    times = np.arange(n_steps + 1) * dt
    out = np.empty((n_steps + 1,) + y0.shape, dtype=y0.dtype)
    out[0] = y0
    y = y0
    for i in range(n_steps):
        t = times[i]
        k1 = deriv(t, y)
        k2 = deriv(t + dt / 2, y + dt / 2 * k1)
        k3 = deriv(t + dt / 2, y + dt / 2 * k2)
        k4 = deriv(t + dt, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = y
    return times, out


def evolve_quantum(rep: SpinRep, field, psi0, t_end: float, dt: float,
                   drift_limit: float = 1e-8):
    """Integrate i psi' = -(a.J) psi.  Returns (times, states, max_drift)."""
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise ValueError("initial state must be normalized")
    J1, J2, J3 = rep.J

    def deriv(t, psi):
        a = field(t)
        return 1j * (a[0] * (J1 @ psi) + a[1] * (J2 @ psi) + a[2] * (J3 @ psi))

    times, states = _rk4(deriv, psi0, t_end, dt)
    drift = float(np.abs(np.linalg.norm(states, axis=1) - 1.0).max())
    if drift > drift_limit:
        raise NormDriftError(
            f"norm drift {drift:.3e} exceeds {drift_limit:.1e}; reduce dt"
        )
    return times, states, drift


def evolve_classical(field, n0: SpherePoint, t_end: float, dt: float,
                     drift_limit: float = 1e-10):
    """Integrate dn/dt = n x a.  Returns (times, vectors, max_drift)."""
    y0 = n0.n

    def deriv(t, n):
        return np.cross(n, field(t))

    times, traj = _rk4(deriv, y0, t_end, dt)
    drift = float(np.abs(np.linalg.norm(traj, axis=1) - 1.0).max())
    if drift > drift_limit:
        raise NormDriftError(
            f"norm drift {drift:.3e} exceeds {drift_limit:.1e}; reduce dt"
        )
    return times, traj, drift


@dataclass
class DynamicsResult:
    times: np.ndarray
    states: np.ndarray          # (n_t, dim)
    classical: np.ndarray       # (n_t, 3)
    fidelity: np.ndarray        # |<n(t)|psi(t)>| per step
    norm_drift: float
    classical_drift: float

    @property
    def max_fidelity_deficit(self) -> float:
        return float((1.0 - self.fidelity).max())


def coherent_fidelity(rep: SpinRep, mu, states, vectors) -> np.ndarray:
    """|<mu, n(t) | psi(t)>| along a trajectory."""
    theta = np.arccos(np.clip(vectors[:, 2], -1.0, 1.0))
    phi = np.arctan2(vectors[:, 1], vectors[:, 0])
    coh = coherent_state_batch(rep, mu, theta, phi)
    return np.abs(np.einsum("na,na->n", coh.conj(), states))


def run_dynamics(rep: SpinRep, mu, field, point0: SpherePoint,
                 t_end: float, dt: float) -> DynamicsResult:
    """Joint quantum/classical evolution from the coherent state at
    point0, with per-step coherence fidelity."""
    from .su2 import coherent_state

    psi0 = coherent_state(rep, mu, point0)
    times, states, qdrift = evolve_quantum(rep, field, psi0, t_end, dt)
    _, traj, cdrift = evolve_classical(field, point0, t_end, dt)
    fid = coherent_fidelity(rep, mu, states, traj)
    return DynamicsResult(times, states, traj, fid, qdrift, cdrift)
