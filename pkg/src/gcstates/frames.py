"""Group-generic frame machinery: frame operators, frame bounds, coherent
expansions and reproducing-kernel checks.

A CoherentFamily packages the state map x -> |x> together with the grid
for the invariant measure and the admissibility constant d.  States are
stored as amplitude vectors in a finite probe space; for the disk family
these are the exact leading components of the (unit-norm) abstract state,
so completeness statements on the probe block are unaffected by the
truncation.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import su11, su2, weyl
from .quadrature import (QuadratureGrid, disk_invariant_grid, plane_grid,
                         sphere_grid)


class CoherentFamily:
    """Coherent-state system {|x>} with its invariant measure and constant d.

    `label` is the group tag ("su2", "su11" or "weyl"); `dim` is the probe
    dimension of the stored amplitude vectors.
    """

    def __init__(self, label: str, grid: QuadratureGrid, d_theoretical: float,
                 dim: int, batch_states, point_coords):
        if d_theoretical <= 0:
            raise ValueError("d must be positive")
        self.label = label
        self.grid = grid
        self.d_theoretical = d_theoretical
        self.dim = dim
        self._batch = batch_states          # points -> (n, dim) amplitudes
        self._coords = point_coords         # point -> real coordinate vector
        self._grid_states = None

    def state_at(self, point) -> np.ndarray:
        return self.states([point])[0]

    def states(self, points) -> np.ndarray:
        return self._batch(points)

    def grid_states(self) -> np.ndarray:
        """(n_grid, dim) amplitude matrix at the grid nodes (cached)."""
        if self._grid_states is None:
            self._grid_states = self._batch(self.grid.points)
        return self._grid_states

    def point_coordinates(self, point) -> np.ndarray:
        return self._coords(point)


def su2_family(rep: su2.SpinRep, mu, grid: QuadratureGrid | None = None
               ) -> CoherentFamily:
    grid = sphere_grid() if grid is None else grid

    def batch(points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return su2.coherent_state_batch(rep, mu, pts[:, 0], pts[:, 1])

    def coords(point):
        return su2.SpherePoint(point[0], point[1]).n

    d = 4.0 * math.pi / (rep.two_j + 1)
    return CoherentFamily("su2", grid, d, rep.dim, batch, coords)


def su11_family(rep: su11.DiskRep, dim: int = 24,
                grid: QuadratureGrid | None = None) -> CoherentFamily:
    grid = disk_invariant_grid() if grid is None else grid
    if dim > rep.cutoff:
        raise ValueError("probe dimension exceeds the representation cutoff")

    def batch(points):
        zs = np.atleast_1d(np.asarray(points, dtype=complex))
        return np.stack([su11.coherent_amplitudes(rep, z, dim - 1)
                         for z in zs])

    def coords(point):
        z = complex(point)
        return np.array([z.real, z.imag])

    d = math.pi / (2.0 * rep.k - 1.0)
    return CoherentFamily("su11", grid, d, dim, batch, coords)


def weyl_family(space: weyl.FockSpace, psi0: np.ndarray,
                grid: QuadratureGrid | None = None,
                dim: int | None = None) -> CoherentFamily:
    grid = plane_grid() if grid is None else grid
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-10:
        raise ValueError("fiducial vector must be normalized")
    dim = space.cutoff // 2 if dim is None else dim

    def batch(points):
        zs = np.atleast_1d(np.asarray(points, dtype=complex))
        # phase-number factorization: D(r e^{i phi}) =
        # e^{i phi n} D(r) e^{-i phi n}; group the points by radius so the
        # expensive radial displacement is built once per distinct radius
        r = np.abs(zs)
        phi = np.angle(zs)
        out = np.empty((len(zs), dim), dtype=complex)
        radii, inverse = np.unique(r, return_inverse=True)
        displacements = weyl._radial_displacements(space, radii)
        n_op = np.arange(space.dim)
        for i, (idx, ph) in enumerate(zip(inverse, phi)):
            x = np.exp(-1j * ph * n_op) * psi0
            y = displacements[idx] @ x
            out[i] = (np.exp(1j * ph * n_op) * y)[:dim]
        return out

    def coords(point):
        z = complex(point)
        return np.array([z.real, z.imag])

    return CoherentFamily("weyl", grid, math.pi ** space.n_modes, dim,
                          batch, coords)


@dataclass
class LatticeSubsystem:
    """Discrete subsystem {|x_l>} with the cell volume V_Gamma per point,
    in the units of the family's invariant measure."""

    family: CoherentFamily
    points: list
    cell_volume: float | None = None

    def __post_init__(self):
        coords = [self.family.point_coordinates(p) for p in self.points]
        for i in range(len(coords)):
            for j in range(i + 1, len(coords)):
                if np.linalg.norm(coords[i] - coords[j]) < 1e-9:
                    raise ValueError(f"points {i} and {j} coincide")


def weyl_lattice_subsystem(family: CoherentFamily, lat: weyl.Lattice,
                           index_range: int = 6) -> LatticeSubsystem:
    """All lattice points m*omega_1 + n*omega_2 with |m|, |n| <= index_range;
    V_Gamma is the fundamental cell area (N = 1)."""
    if family.label != "weyl" or lat.n_modes != 1:
        raise ValueError("weyl_lattice_subsystem is single-mode Weyl only")
    w1, w2 = lat.periods[0, 0], lat.periods[1, 0]
    pts = [m * w1 + n * w2
           for m in range(-index_range, index_range + 1)
           for n in range(-index_range, index_range + 1)]
    return LatticeSubsystem(family, pts, lat.cell_area())


def uniform_sphere_subsystem(family: CoherentFamily,
                             points: list) -> LatticeSubsystem:
    """Uniformly distributed sphere points; V_Gamma = 4 pi / count."""
    if family.label != "su2":
        raise ValueError("uniform_sphere_subsystem is SU(2) only")
    return LatticeSubsystem(family, points, 4.0 * math.pi / len(points))


def tetrahedron_points() -> list:
    """The 4 vertices of a regular tetrahedron as (theta, phi) pairs."""
    verts = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]],
                     dtype=float) / math.sqrt(3.0)
    return [(math.acos(v[2]), math.atan2(v[1], v[0])) for v in verts]


def frame_operator(sub: LatticeSubsystem, probe_dim: int) -> np.ndarray:
    """S = sum_l |x_l><x_l| on the leading probe_dim block."""
    if probe_dim > sub.family.dim:
        raise ValueError("probe_dim exceeds the family dimension")
    if not len(sub.points):
        return np.zeros((probe_dim, probe_dim), dtype=complex)
    states = sub.family.states(sub.points)[:, :probe_dim]
    return np.einsum("na,nb->ab", states, states.conj())


def frame_bounds(sub: LatticeSubsystem, probe_dim: int) -> tuple[float, float]:
    """Extreme eigenvalues (A, B) of the frame operator on the probe block;
    A > 0 certifies completeness on that subspace."""
    lam = np.linalg.eigvalsh(frame_operator(sub, probe_dim))
    return float(lam[0]), float(lam[-1])


def frame_report(sub: LatticeSubsystem, probe_dim: int, group: str | None = None
                 ) -> dict:
    a, b = frame_bounds(sub, probe_dim)
    d = sub.family.d_theoretical
    v = sub.cell_volume
    return {
        "group": sub.family.label if group is None else group,
        "probe_dim": probe_dim,
        "num_points": len(sub.points),
        "cell_volume": v,
        "d": d,
        "ratio": None if v is None else v / d,
        "A": a,
        "B": b,
    }


def frame_report_json(sub: LatticeSubsystem, probe_dim: int) -> str:
    return json.dumps(frame_report(sub, probe_dim), sort_keys=True)


def continuum_frame_operator(family: CoherentFamily,
                             probe_dim: int) -> np.ndarray:
    """Weighted continuum frame operator integral dx |x><x| on the probe
    block; equals d * I up to quadrature/cutoff error."""
    if probe_dim > family.dim:
        raise ValueError("probe_dim exceeds the family dimension")
    states = family.grid_states()[:, :probe_dim]
    return np.einsum("n,na,nb->ab", family.grid.weights, states, states.conj())


def expand(family: CoherentFamily, psi: np.ndarray) -> np.ndarray:
    """Coefficient samples c(x) = <x|psi> on the family grid."""
    psi = np.asarray(psi, dtype=complex)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("state must be normalized")
    if len(psi) != family.dim:
        raise ValueError("state dimension must match the family")
    return family.grid_states().conj() @ psi


def parseval_sum(family: CoherentFamily, c_samples: np.ndarray) -> float:
    """(1/d) integral |c(x)|^2 dx; equals 1 for normalized states."""
    return float(np.sum(family.grid.weights * np.abs(c_samples) ** 2)
                 / family.d_theoretical)


def reconstruct(family: CoherentFamily, c_samples: np.ndarray) -> np.ndarray:
    """(1/d) integral dx c(x) |x> by quadrature."""
    c_samples = np.asarray(c_samples, dtype=complex)
    if len(c_samples) != len(family.grid.points):
        raise ValueError("sample count must match the family grid")
    return ((family.grid.weights * c_samples) @ family.grid_states()
            / family.d_theoretical)


def kernel_check(family: CoherentFamily, n_pairs: int = 20,
                 seed: int = 7) -> float:
    """Max over sampled (x, z) pairs of |K(x,z) - integral K(x,y) K(y,z) dy|
    with K(x,y) = (1/d) <x|y>."""
    states = family.grid_states()
    rng = np.random.default_rng(seed)
    n = len(states)
    worst = 0.0
    d = family.d_theoretical
    for _ in range(n_pairs):
        i, j = rng.integers(0, n, size=2)
        k_xz = states[i].conj() @ states[j] / d
        k_xy = states[i].conj() @ states.T / d      # K(x, y) over the grid
        k_yz = states.conj() @ states[j] / d        # K(y, z) over the grid
        integral = np.sum(family.grid.weights * k_xy * k_yz)
        worst = max(worst, abs(k_xz - integral))
    return worst


__all__ = [
    "CoherentFamily", "LatticeSubsystem",
    "su2_family", "su11_family", "weyl_family",
    "weyl_lattice_subsystem", "uniform_sphere_subsystem",
    "tetrahedron_points",
    "frame_operator", "frame_bounds", "frame_report", "frame_report_json",
    "continuum_frame_operator", "expand", "parseval_sum", "reconstruct",
    "kernel_check",
]
