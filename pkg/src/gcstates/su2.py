"""Spin coherent states |mu, n> for SU(2).

Construction follows the section g(n) = g3_phi g2_theta: a state at the
sphere point n = (theta, phi) is exp(-i phi J3) exp(-i theta J2) |j, mu>.
All phases quoted elsewhere are relative to this section.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .halfint import check_character, twice, weight_index
from .quadrature import SPHERE, SU2_HAAR, QuadratureGrid, require_tag
from .special import clebsch_gordan, spherical_harmonic


@dataclass(frozen=True)
class SU2Element:
    """Group element ((alpha, beta), (-conj(beta), conj(alpha))) with
    |alpha|^2 + |beta|^2 = 1."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("SU(2) element requires |alpha|^2 + |beta|^2 = 1")

    @property
    def matrix(self) -> np.ndarray:
        a, b = self.alpha, self.beta
        return np.array([[a, b], [-np.conj(b), np.conj(a)]])

    def __matmul__(self, other: "SU2Element") -> "SU2Element":
        m = self.matrix @ other.matrix
        return SU2Element(m[0, 0], m[0, 1])


@dataclass(frozen=True)
class SpherePoint:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")

    @property
    def n(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi),
                         st * math.sin(self.phi),
                         math.cos(self.theta)])

    @staticmethod
    def from_vector(n) -> "SpherePoint":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        return SpherePoint(math.acos(np.clip(n[2], -1, 1)),
                           math.atan2(n[1], n[0]) % (2 * math.pi))

    def stereographic(self):
        """zeta = cot(theta/2) e^{i phi}; None encodes the point at
        infinity (theta = 0, where the chart has its pole)."""
        if self.theta == 0.0:
            return None
        return complex(1.0 / math.tan(self.theta / 2.0) * np.exp(1j * self.phi))


class SpinRep:
    """Spin-j representation: basis |j, mu> with mu ascending -j..j and
    J3 diagonal."""

    def __init__(self, j):
        self.two_j = twice(j)
        if self.two_j < 0:
            raise ValueError("j must be non-negative")
        self.j = self.two_j / 2.0
        self.dim = self.two_j + 1
        self.weights = np.arange(self.dim) - self.j
        jp = np.zeros((self.dim, self.dim))
        for i in range(self.dim - 1):
            m = self.weights[i]
            jp[i + 1, i] = math.sqrt(self.j * (self.j + 1) - m * (m + 1))
        self.J3 = np.diag(self.weights).astype(complex)
        self.J1 = ((jp + jp.T) / 2.0).astype(complex)
        self.J2 = (jp - jp.T) / 2j
        # eigendecomposition of J2 backs all y-rotations
        lam, v = np.linalg.eigh(self.J2)
        self._j2_lam, self._j2_v = lam, v

    @property
    def J(self):
        return (self.J1, self.J2, self.J3)

    def index(self, mu) -> int:
        return weight_index(self.two_j, twice(mu))

    def rot_y(self, theta: float) -> np.ndarray:
        """exp(-i theta J2) (unitary by construction)."""
        v, lam = self._j2_v, self._j2_lam
        return (v * np.exp(-1j * theta * lam)) @ v.conj().T

    def rot_z_phases(self, phi) -> np.ndarray:
        """Diagonal of exp(-i phi J3); phi may be an array (result has the
        weight axis last)."""
        phi = np.asarray(phi, dtype=float)
        return np.exp(-1j * np.multiply.outer(phi, self.weights))

    def rotation(self, phi: float, theta: float, psi: float = 0.0) -> np.ndarray:
        """T(g) for z-y-z Euler angles (phi, theta, psi)."""
        u = self.rot_y(theta)
        return (self.rot_z_phases(phi)[:, None] * u) * self.rot_z_phases(psi)[None, :]



def rotation_so3(phi: float, theta: float, psi: float = 0.0) -> np.ndarray:
    """SO(3) matrix of the z-y-z rotation R_z(phi) R_y(theta) R_z(psi)."""

    def rz(a):
        c, s = math.cos(a), math.sin(a)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])

    def ry(a):
        c, s = math.cos(a), math.sin(a)
        return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])

    return rz(phi) @ ry(theta) @ rz(psi)


@lru_cache(maxsize=64)
def _rep_cache(two_j: int) -> SpinRep:
    return SpinRep(two_j / 2.0)


def spin_rep(j) -> SpinRep:
    return _rep_cache(twice(j))


def coherent_state(rep: SpinRep, mu, point: SpherePoint) -> np.ndarray:
    """|mu, n> = exp(-i phi J3) exp(-i theta J2) |j, mu>."""
    idx = rep.index(mu)
    v = rep.rot_y(point.theta)[:, idx]
    return rep.rot_z_phases(point.phi) * v


def coherent_state_batch(rep: SpinRep, mu, thetas, phis) -> np.ndarray:
    """States at many sphere points at once; returns (n_points, dim)."""
    idx = rep.index(mu)
    thetas = np.asarray(thetas, dtype=float)
    col = (rep._j2_v.conj().T)[:, idx]  # V^dagger e_idx
    rot = np.exp(-1j * np.multiply.outer(thetas, rep._j2_lam)) * col[None, :]
    states = rot @ rep._j2_v.T  # (n, dim): (V e^{-i theta L} V^dag e_idx)^T
    return rep.rot_z_phases(phis) * states


def overlap(rep: SpinRep, mu, p1: SpherePoint, p2: SpherePoint) -> complex:
    """<mu, n1 | mu, n2> from the explicit vectors."""
    v1 = coherent_state(rep, mu, p1)
    v2 = coherent_state(rep, mu, p2)
    return complex(np.vdot(v1, v2))


def overlap_mu_j(rep: SpinRep, p1: SpherePoint, p2: SpherePoint) -> float:
    """|<j,n1|j,n2>|^2 = ((1 + n1.n2)/2)^{2j} (closed form, mu = j)."""
    c = float(p1.n @ p2.n)
    return ((1.0 + c) / 2.0) ** rep.two_j


def d_constant(rep: SpinRep, mu, grid: QuadratureGrid) -> float:
    """integral of |<mu,n'|mu,n>|^2 dn (n' at the north pole); equals
    4*pi/(2j+1)."""
    require_tag(grid, SPHERE)
    states = coherent_state_batch(rep, mu, grid.points[:, 0], grid.points[:, 1])
    idx = rep.index(mu)
    return float(np.sum(grid.weights * np.abs(states[:, idx]) ** 2))


def identity_check(rep: SpinRep, mu, grid: QuadratureGrid) -> float:
    """Max-norm deviation of (2j+1)/(4 pi) * integral |mu,n><mu,n| dn
    from the identity."""
    require_tag(grid, SPHERE)
    states = coherent_state_batch(rep, mu, grid.points[:, 0], grid.points[:, 1])
    b = np.einsum("n,na,nb->ab", grid.weights, states, states.conj())
    b *= (rep.two_j + 1.0) / (4.0 * np.pi)
    return float(np.abs(b - np.eye(rep.dim)).max())


# ---------------------------------------------------------------------------
# z-representation (polynomials of degree 2j) and the Mobius action


def _binom_radical(two_j: int, two_mu: int) -> float:
    # sqrt((2j)! / ((j+mu)! (j-mu)!))
    jpm, jmm = (two_j + two_mu) // 2, (two_j - two_mu) // 2
    return math.exp(0.5 * (math.lgamma(two_j + 1)
                           - math.lgamma(jpm + 1) - math.lgamma(jmm + 1)))


def z_function(rep: SpinRep, mu, zeta: complex) -> np.ndarray:
    """Monomial coefficients (z^0 .. z^{2j}) of the coherent state at the
    stereographic point zeta:

        N (1+|zeta|^2)^{-j} (z + conj(zeta))^{j-mu} (1 - zeta z)^{j+mu}

    Chart note: the rotation-operator section used by `coherent_state`
    lands in this realization at the label -conj(zeta) rather than zeta
    itself, i.e. basis_to_z(coherent_state(rep, mu, p)) is proportional to
    z_function(rep, mu, -conj(p.stereographic())).  The fractional-linear
    action `matrix_action_z` and `mobius_action` are mutually consistent
    with the labels used here.
    """
    if rep.two_j > 50:
        raise ValueError("z_function supports j <= 25")
    two_mu = twice(mu)
    check_character(rep.two_j, two_mu, "mu")
    jmm = (rep.two_j - two_mu) // 2
    jpm = (rep.two_j + two_mu) // 2
    p = np.polynomial.polynomial
    poly = p.polymul(
        p.polypow([np.conj(zeta), 1.0], jmm),
        p.polypow([1.0, -zeta], jpm),
    )
    out = np.zeros(rep.dim, dtype=complex)
    out[: len(poly)] = poly
    norm = _binom_radical(rep.two_j, two_mu) * (1.0 + abs(zeta) ** 2) ** (-rep.j)
    return norm * out


def basis_to_z(rep: SpinRep, v: np.ndarray) -> np.ndarray:
    """Map a basis-coefficient vector to monomial coefficients via
    <z|j,nu> = sqrt((2j)!/((j+nu)!(j-nu)!)) z^{j+nu}."""
    rad = np.array([_binom_radical(rep.two_j, int(2 * m)) for m in rep.weights])
    return v * rad


def matrix_action_z(rep: SpinRep, g: SU2Element, poly: np.ndarray) -> np.ndarray:
    """(T(g) f)(z) = (beta z + conj(alpha))^{2j} f((alpha z - conj(beta)) /
    (beta z + conj(alpha))) for a polynomial f of degree <= 2j."""
    a, b = g.alpha, g.beta
    p = np.polynomial.polynomial
    num = np.array([-np.conj(b), a])      # alpha z - conj(beta)
    den = np.array([np.conj(a), b])       # beta z + conj(alpha)
    out = np.zeros(rep.dim, dtype=complex)
    for k, c in enumerate(poly):
        if c == 0:
            continue
        term = c * p.polymul(p.polypow(num, k), p.polypow(den, rep.two_j - k))
        out[: len(term)] += term
    return out


@dataclass(frozen=True)
class MobiusResult:
    phase: complex
    zeta: complex | None  # None encodes the point at infinity


def mobius_action(g: SU2Element, mu, zeta: complex) -> MobiusResult:
    """Fractional-linear action g.zeta = (alpha zeta - beta) /
    (conj(beta) zeta + conj(alpha)) with the mu-dependent phase
    ((conj(beta) zeta + conj(alpha)) / (beta conj(zeta) + alpha))^mu.

    The phase exponent 2*mu is an integer, so the branch is unambiguous.
    """
    two_mu = twice(mu)
    a, b = g.alpha, g.beta
    den = np.conj(b) * zeta + np.conj(a)
    w = b * np.conj(zeta) + a  # = conj(den)
    phase = np.exp(-1j * two_mu * np.angle(w))
    if abs(den) < 1e-14:
        return MobiusResult(complex(phase), None)
    return MobiusResult(complex(phase), complex((a * zeta - b) / den))


def overlap_disk(rep: SpinRep, zeta1: complex, zeta2: complex) -> complex:
    """<j, zeta1 | j, zeta2> = (1+|zeta1|^2)^{-j} (1+|zeta2|^2)^{-j}
    (1 + conj(zeta1) zeta2)^{2j}  (mu = j states)."""
    return complex(
        (1.0 + abs(zeta1) ** 2) ** (-rep.j)
        * (1.0 + abs(zeta2) ** 2) ** (-rep.j)
        * (1.0 + np.conj(zeta1) * zeta2) ** rep.two_j
    )


# ---------------------------------------------------------------------------
# Density matrices: Q function, P operators, Clebsch-Gordan closed form


@dataclass
class DensityMatrix:
    rep: SpinRep
    matrix: np.ndarray
    _validated: bool = field(default=False, repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.rep.dim, self.rep.dim):
            raise ValueError("density matrix shape does not match the representation")
        if np.abs(m - m.conj().T).max() > 1e-12:
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ValueError("density matrix must be positive semidefinite")
        self.matrix = m


def q_function(rho: DensityMatrix, mu, point: SpherePoint) -> float:
    """Q(n) = <mu,n| rho |mu,n>."""
    v = coherent_state(rho.rep, mu, point)
    return float(np.real(np.vdot(v, rho.matrix @ v)))


def p_operator_quadrature(rep: SpinRep, mu, l: int, m: int,
                          grid: QuadratureGrid) -> np.ndarray:
    """P_{l,m} = integral dn Y_{l,m}(n) |mu,n><mu,n| by quadrature."""
    require_tag(grid, SPHERE)
    if abs(m) > l or l < 0:
        raise ValueError("need 0 <= l and |m| <= l")
    if l > rep.two_j:
        return np.zeros((rep.dim, rep.dim), dtype=complex)
    states = coherent_state_batch(rep, mu, grid.points[:, 0], grid.points[:, 1])
    y = spherical_harmonic(l, m, grid.points[:, 0], grid.points[:, 1])
    return np.einsum("n,na,nb->ab", grid.weights * y, states, states.conj())


def p_operator(rep: SpinRep, mu, l: int, m: int) -> np.ndarray:
    """Closed form of the matrix elements of P_{l,m}:

        <nu'| P_{l,m} |nu> = sqrt(4 pi (2l+1))/(2j+1) * (-1)^m
                             * (l,-m; j,nu' | j,nu) (l,0; j,mu | j,mu)

    The coupling order shown is the one validated against the quadrature
    evaluation, which is authoritative for the phase convention.
    """
    if abs(m) > l or l < 0:
        raise ValueError("need 0 <= l and |m| <= l")
    two_mu = twice(mu)
    check_character(rep.two_j, two_mu, "mu")
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    if l > rep.two_j:
        return out
    j = rep.j
    mu_v = two_mu / 2.0
    scale = (math.sqrt(4.0 * math.pi * (2 * l + 1)) / (rep.two_j + 1.0)
             * (-1.0) ** m * clebsch_gordan(l, 0, j, mu_v, j, mu_v))
    for ip, nu_p in enumerate(rep.weights):
        nu = nu_p - m
        if abs(nu) > j:
            continue
        out[ip, rep.index(nu)] = scale * clebsch_gordan(l, -m, j, nu_p, j, nu)
    return out


def p_to_rho(rep: SpinRep, mu, coefficients: dict) -> tuple[np.ndarray, float]:
    """rho = sum C_{l,m} P_{l,m} for coefficients keyed by (l, m).

    Requires the Hermiticity pairing C_{l,-m} = (-1)^m conj(C_{l,m}).
    Returns (matrix, min_eigenvalue); positivity is reported, not enforced.
    """
    for (l, m), c in coefficients.items():
        partner = coefficients.get((l, -m), 0.0)
        if abs(partner - (-1.0) ** m * np.conj(c)) > 1e-10:
            raise ValueError(
                f"non-Hermitian coefficient set at (l={l}, m={m}): "
                "need C_{l,-m} = (-1)^m conj(C_{l,m})"
            )
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for (l, m), c in coefficients.items():
        if l > rep.two_j:
            continue
        out += c * p_operator(rep, mu, l, m)
    return out, float(np.linalg.eigvalsh(out).min())


def rho_to_p(rep: SpinRep, mu, rho: np.ndarray) -> dict:
    """Invert the expansion: find C_{l,m} (l <= 2j) with
    rho = sum C_{l,m} P_{l,m} by linear solve (the operators span the full
    matrix space)."""
    keys = [(l, m) for l in range(rep.two_j + 1) for m in range(-l, l + 1)]
    basis = np.column_stack(
        [p_operator(rep, mu, l, m).ravel() for (l, m) in keys]
    )
    sol, *_ = np.linalg.lstsq(basis, np.asarray(rho, dtype=complex).ravel(),
                              rcond=None)
    return dict(zip(keys, sol))


def group_average_projector(rep: SpinRep, mu, point: SpherePoint,
                            haar_grid: QuadratureGrid) -> np.ndarray:
    """(2j+1)/(16 pi^2) * integral dg <n|T(g)|n>* T(g), which reproduces
    the projector |mu,n><mu,n| by matrix-element orthogonality."""
    require_tag(haar_grid, SU2_HAAR)
    if rep.dim == 1:
        return np.ones((1, 1), dtype=complex)
    v = coherent_state(rep, mu, point)
    theta = haar_grid.meta["theta"]
    w_theta = haar_grid.meta["w_theta"]
    phi = haar_grid.meta["phi"]
    psi = haar_grid.meta["psi"]
    n = len(phi)
    ephi = rep.rot_z_phases(phi)   # (n, dim)
    epsi = rep.rot_z_phases(psi)   # (n, dim)
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for th, wt in zip(theta, w_theta):
        d = rep.rot_y(th)
        # c(phi,psi) = sum_ab conj(v_a) v_b ephi_a d_ab epsi_b
        left = ephi * v.conj()[None, :]          # (n, dim)
        right = epsi * v[None, :]                # (n, dim)
        c = left @ d @ right.T                   # (n_phi, n_psi)
        # accumulate sum conj(c) * ephi_a d_ab epsi_b over (phi, psi)
        out += wt * np.einsum("pq,pa,qb->ab", c.conj(), ephi, epsi) * d
    out *= (2.0 * np.pi / n) * (4.0 * np.pi / n)
    out *= (rep.two_j + 1.0) / (16.0 * np.pi**2)
    return out
