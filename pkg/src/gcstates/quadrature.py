"""Quadrature grids for the three homogeneous spaces.

Each grid discretizes one invariant measure:

* sphere_grid   -- dn = sin(theta) dtheta dphi on S^2 (total 4*pi)
* plane_grid    -- d^2 alpha = dRe dIm on a disk |alpha| <= radius
* disk_grid     -- normalized measure ((2k-1)/pi) (1-|z|^2)^{2k-2} d^2 z
                   on the unit disk (total 1)
* disk_invariant_grid -- invariant measure d^2 z / (1-|z|^2)^2 with a
                   radial cutoff |z| <= 1-eps (it diverges at the boundary)
* euler_grid    -- Haar measure sin(theta) dtheta dphi dpsi on SU(2)
                   (total 16*pi^2)

Polar grids carry their radial/angular factorization in `meta` so callers
can reuse per-radius work across the angular nodes.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

SPHERE = "sphere_dn"
PLANE = "plane_d2alpha"
DISK_K = "disk_dmu_k"
DISK_INVARIANT = "disk_dmu"
SU2_HAAR = "su2_haar"


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes, positive weights and the measure they discretize.

    `points` is an (n, 2) array of (theta, phi) for the sphere, an (n, 3)
    array of Euler angles (phi, theta, psi) for SU(2), and a complex
    (n,) array for the planar/disk grids.
    """

    points: np.ndarray
    weights: np.ndarray
    measure_tag: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise ValueError("all quadrature weights must be positive")
        if len(self.weights) != len(self.points):
            raise ValueError("points/weights length mismatch")

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def integrate(self, values) -> complex:
        return complex(np.sum(self.weights * np.asarray(values)))


def require_tag(grid: QuadratureGrid, tag: str) -> None:
    if grid.measure_tag != tag:
        raise ValueError(
            f"grid has measure {grid.measure_tag!r}, expected {tag!r}"
        )


def sphere_grid(n_theta: int = 64, n_phi: int = 128) -> QuadratureGrid:
    """Gauss-Legendre nodes in cos(theta) crossed with uniform phi."""
    if n_theta < 2 or n_phi < 2:
        raise ValueError("need at least 2 nodes per direction")
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = np.arccos(x)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    wt = np.repeat(w * (2.0 * np.pi / n_phi), n_phi)
    points = np.column_stack([th.ravel(), ph.ravel()])
    return QuadratureGrid(points, wt, SPHERE,
                          meta={"theta": theta, "w_theta": w, "phi": phi})


def _polar(r, w_r, n_phi, prefactor=1.0):
    """Assemble a polar grid from radial nodes; weights already include the
    radial Jacobian, the angular factor 2*pi/n_phi is applied here."""
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    z = rr.ravel() * np.exp(1j * pp.ravel())
    wt = np.repeat(w_r * (2.0 * np.pi / n_phi) * prefactor, n_phi)
    return z, wt, phi


def plane_grid(radius: float = 6.0, n_r: int = 48, n_phi: int = 96) -> QuadratureGrid:
    """Polar grid for d^2 alpha truncated to |alpha| <= radius."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    x, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * radius * (x + 1.0)
    w_r = 0.5 * radius * w * r  # includes the Jacobian r dr
    z, wt, phi = _polar(r, w_r, n_phi)
    return QuadratureGrid(z, wt, PLANE,
                          meta={"r": r, "w_r": w_r, "phi": phi,
                                "n_phi": n_phi, "radius": radius})


def disk_grid(k: float, n_r: int = 48, n_phi: int = 96) -> QuadratureGrid:
    """Grid for the normalized measure d mu_k on the unit disk.

    Radial nodes are Gauss-Jacobi in u = r^2 adapted to the weight
    (1-u)^{2k-2}; the weights sum to integral(d mu_k) = 1.
    """
    if k <= 0.5:
        raise ValueError("measure requires k > 1/2 (not normalizable otherwise)")
    x, w = roots_jacobi(n_r, 2.0 * k - 2.0, 0.0)
    u = 0.5 * (x + 1.0)
    r = np.sqrt(u)
    # d mu_k = ((2k-1)/pi) (1-u)^{2k-2} (1/2) du dphi;
    # roots_jacobi weights absorb (1-x)^{2k-2} on [-1,1]: du = dx/2 and
    # (1-x)^{2k-2} = (2(1-u))^{2k-2}
    w_u = w * 0.5 * (2.0 ** (2.0 - 2.0 * k)) * 0.5
    w_r = (2.0 * k - 1.0) / np.pi * w_u
    z, wt, phi = _polar(r, w_r, n_phi)
    return QuadratureGrid(z, wt, DISK_K,
                          meta={"k": k, "r": r, "w_r": w_r, "phi": phi,
                                "n_phi": n_phi})


def disk_invariant_grid(n_r: int = 48, n_phi: int = 96,
                        eps: float = 1e-8) -> QuadratureGrid:
    """Grid for the invariant measure d^2 z / (1-|z|^2)^2, radius cut at
    1-eps.  The cutoff error for integrands vanishing like (1-|z|^2)^{2k}
    is O(eps^{2k-1})."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    x, w = np.polynomial.legendre.leggauss(n_r)
    rmax = 1.0 - eps
    r = 0.5 * rmax * (x + 1.0)
    w_r = 0.5 * rmax * w * r / (1.0 - r**2) ** 2
    z, wt, phi = _polar(r, w_r, n_phi)
    return QuadratureGrid(z, wt, DISK_INVARIANT,
                          meta={"r": r, "w_r": w_r, "phi": phi,
                                "n_phi": n_phi, "eps": eps})


def euler_grid(n: int = 24) -> QuadratureGrid:
    """Haar grid over SU(2) in z-y-z Euler angles (phi, theta, psi) with
    phi in [0, 2pi), psi in [0, 4pi); weights sum to 16*pi^2."""
    if n < 2:
        raise ValueError("need at least 2 nodes per angle")
    x, w_t = np.polynomial.legendre.leggauss(n)
    theta = np.arccos(x)
    phi = 2.0 * np.pi * np.arange(n) / n
    psi = 4.0 * np.pi * np.arange(n) / n
    ph, th, ps = np.meshgrid(phi, theta, psi, indexing="ij")
    wt = np.einsum(
        "a,b,c->abc",
        np.full(n, 2.0 * np.pi / n),
        w_t,
        np.full(n, 4.0 * np.pi / n),
    ).ravel()
    points = np.column_stack([ph.ravel(), th.ravel(), ps.ravel()])
    return QuadratureGrid(points, wt, SU2_HAAR,
                          meta={"theta": theta, "w_theta": w_t,
                                "phi": phi, "psi": psi})


__all__ = [
    "QuadratureGrid", "require_tag",
    "sphere_grid", "plane_grid", "disk_grid", "disk_invariant_grid",
    "euler_grid",
    "SPHERE", "PLANE", "DISK_K", "DISK_INVARIANT", "SU2_HAAR",
]
