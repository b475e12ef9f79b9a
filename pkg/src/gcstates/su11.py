"""SU(1,1) discrete-series coherent states on the unit disk.

The representation with Bargmann index k > 1/2 acts on analytic functions
f(z) = sum c_n z^n with norm^2 = sum h_n |c_n|^2, where
h_n = Gamma(n+1) Gamma(2k) / Gamma(n+2k).  DiskFunction stores the
monomial coefficients c_n; the orthonormal basis is
|n> = h_n^{-1/2} z^n.

k is integer or half-integer for SU(1,1) proper; arbitrary real k > 1/2
is accepted for the universal cover.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import DISK_INVARIANT, DISK_K, QuadratureGrid, require_tag


@dataclass(frozen=True)
class SU11Element:
    """Group element ((alpha, beta), (conj(beta), conj(alpha))) with
    |alpha|^2 - |beta|^2 = 1."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        if abs(abs(self.alpha) ** 2 - abs(self.beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("SU(1,1) element requires |alpha|^2 - |beta|^2 = 1")

    @property
    def matrix(self) -> np.ndarray:
        a, b = self.alpha, self.beta
        return np.array([[a, b], [np.conj(b), np.conj(a)]])

    def __matmul__(self, other: "SU11Element") -> "SU11Element":
        m = self.matrix @ other.matrix
        return SU11Element(m[0, 0], m[0, 1])

    def inverse(self) -> "SU11Element":
        return SU11Element(np.conj(self.alpha), -self.beta)


@dataclass(frozen=True)
class DiskPoint:
    zeta: complex

    def __post_init__(self):
        if abs(self.zeta) >= 1.0:
            raise ValueError("disk point requires |zeta| < 1")


class DiskRep:
    """Discrete-series representation data: index k and basis cutoff."""

    def __init__(self, k: float, cutoff: int = 256):
        if k <= 0.5:
            raise ValueError(
                "k must exceed 1/2: the defining measure is not normalizable "
                "for k <= 1/2, even on the universal cover"
            )
        if cutoff < 4:
            raise ValueError("cutoff too small")
        self.k = float(k)
        self.cutoff = cutoff
        n = np.arange(cutoff + 1)
        # h_n = Gamma(n+1) Gamma(2k) / Gamma(n+2k), kept in log form
        self._log_h = (np.vectorize(math.lgamma)(n + 1.0)
                       + math.lgamma(2.0 * self.k)
                       - np.vectorize(math.lgamma)(n + 2.0 * self.k))
        self.h = np.exp(self._log_h)           # monomial norms^2
        self.basis_scale = np.exp(-0.5 * self._log_h)  # 1/sqrt(h_n)

    def __eq__(self, other):
        return (isinstance(other, DiskRep) and self.k == other.k
                and self.cutoff == other.cutoff)


@dataclass
class DiskFunction:
    """Analytic function on the disk as monomial coefficients c_0..c_cutoff."""

    rep: DiskRep
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.zeros(self.rep.cutoff + 1, dtype=complex)
        given = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        if len(given) > len(c):
            raise ValueError("coefficient list longer than the cutoff")
        c[: len(given)] = given
        self.coefficients = c

    def norm_squared(self) -> float:
        return float(np.sum(self.rep.h * np.abs(self.coefficients) ** 2))

    def evaluate(self, z) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.coefficients))

    def orthonormal_coefficients(self) -> np.ndarray:
        """Components along the orthonormal basis |n>."""
        return self.coefficients / self.rep.basis_scale

    def to_json(self) -> str:
        return json.dumps({
            "k": self.rep.k,
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
        }, sort_keys=True)

    @staticmethod
    def from_json(text: str, cutoff: int = 256) -> "DiskFunction":
        data = json.loads(text)
        rep = DiskRep(data["k"], cutoff=max(cutoff, len(data["coefficients"]) - 1))
        coeffs = np.array([complex(re, im) for re, im in data["coefficients"]])
        return DiskFunction(rep, coeffs)


def basis_vector(rep: DiskRep, n: int) -> DiskFunction:
    """|n> = sqrt(Gamma(n+2k)/(Gamma(n+1) Gamma(2k))) z^n."""
    if not 0 <= n <= rep.cutoff:
        raise ValueError("basis index out of range")
    c = np.zeros(rep.cutoff + 1, dtype=complex)
    c[n] = rep.basis_scale[n]
    return DiskFunction(rep, c)


def inner_product(rep: DiskRep, f: DiskFunction, g: DiskFunction) -> complex:
    """<f|g> = sum h_n conj(f_n) g_n (closed form of the measure integral)."""
    if f.rep != rep or g.rep != rep:
        raise ValueError("representation mismatch")
    return complex(np.sum(rep.h * np.conj(f.coefficients) * g.coefficients))


def inner_product_quadrature(rep: DiskRep, f: DiskFunction, g: DiskFunction,
                             grid: QuadratureGrid) -> complex:
    """<f|g> by quadrature of integral d mu_k conj(f) g (oracle route)."""
    require_tag(grid, DISK_K)
    fz = np.polynomial.polynomial.polyval(grid.points, f.coefficients)
    gz = np.polynomial.polynomial.polyval(grid.points, g.coefficients)
    return complex(np.sum(grid.weights * np.conj(fz) * gz))


def group_action(rep: DiskRep, g: SU11Element, f: DiskFunction,
                 headroom: int | None = None) -> DiskFunction:
    """T(g) f(z) = (beta z + conj(alpha))^{-2k} f((alpha z + conj(beta)) /
    (beta z + conj(alpha))).

    Computed coefficient-exactly: column n of T(g) is the series of
    (alpha z + conj(beta))^n (beta z + conj(alpha))^{-2k-n}, whose binomial
    expansion converges since |beta/conj(alpha)| < 1.  Input support must
    leave truncation headroom (default cutoff/2).
    """
    if f.rep != rep:
        raise ValueError("representation mismatch")
    headroom = rep.cutoff // 2 if headroom is None else headroom
    support = np.nonzero(np.abs(f.coefficients) > 0)[0]
    if len(support) and support[-1] > headroom:
        raise ValueError(
            f"input support (degree {support[-1]}) exceeds the headroom "
            f"{headroom}; the re-expansion would be unreliable"
        )
    a, b = g.alpha, g.beta
    ca, cb = np.conj(a), np.conj(b)
    m = rep.cutoff + 1
    ratio = b / ca  # |ratio| < 1
    # (1 + ratio z)^{-M} coefficient recurrences, shared prefix trick not
    # needed at desk scale: build each needed column directly
    out = np.zeros(m, dtype=complex)
    p = np.polynomial.polynomial
    for n in support:
        c = f.coefficients[n]
        # (alpha z + conj(beta))^n  -- exact, degree n
        num = p.polypow(np.array([cb, a]), int(n))
        # (beta z + conj(alpha))^{-(2k+n)} = conj(alpha)^{-(2k+n)}
        #   * (1 + ratio z)^{-(2k+n)}
        mm = 2.0 * rep.k + n
        series = np.empty(m, dtype=complex)
        series[0] = 1.0
        for i in range(m - 1):
            series[i + 1] = series[i] * (-ratio) * (mm + i) / (i + 1)
        pref = np.exp(-mm * np.log(ca))
        col = np.convolve(num, series)[:m]
        out += c * pref * col
    return DiskFunction(rep, out)


def coherent_state(rep: DiskRep, point: DiskPoint,
                   tail_tol: float = 1e-10) -> DiskFunction:
    """|zeta> = (1-|zeta|^2)^k sum_n sqrt(Gamma(n+2k)/(Gamma(n+1)Gamma(2k)))
    zeta^n |n>, i.e. the function (1-|zeta|^2)^k (1 - zeta z)^{-2k}."""
    z = point.zeta
    if abs(z) > 1.0 - 1e-6:
        raise ValueError("|zeta| must stay below 1 - 1e-6 for tail control")
    amp = coherent_amplitudes(rep, z, rep.cutoff)
    tail = 1.0 - float(np.sum(np.abs(amp) ** 2))
    if tail > tail_tol:
        raise ValueError(
            f"truncation tail {tail:.2e} exceeds {tail_tol:.1e}; "
            "raise the cutoff or move zeta inward"
        )
    return DiskFunction(rep, amp * rep.basis_scale)


def coherent_amplitudes(rep: DiskRep, zeta: complex, n_max: int) -> np.ndarray:
    """Orthonormal-basis components <n|zeta> for n = 0..n_max."""
    n = np.arange(n_max + 1)
    logmod = (rep.k * math.log1p(-abs(zeta) ** 2)
              - 0.5 * rep._log_h[: n_max + 1])
    if zeta == 0:
        out = np.zeros(n_max + 1, dtype=complex)
        out[0] = 1.0
        return out
    return np.exp(logmod + n * np.log(complex(zeta)))


def overlap(rep: DiskRep, p1: DiskPoint, p2: DiskPoint) -> complex:
    """<zeta1|zeta2> = (1-|z1|^2)^k (1-|z2|^2)^k (1 - conj(z1) z2)^{-2k}."""
    z1, z2 = p1.zeta, p2.zeta
    return complex(
        (1.0 - abs(z1) ** 2) ** rep.k
        * (1.0 - abs(z2) ** 2) ** rep.k
        * np.exp(-2.0 * rep.k * np.log(1.0 - np.conj(z1) * z2))
    )


def d_constant(rep: DiskRep, grid: QuadratureGrid) -> float:
    """integral d mu(zeta) |<0|zeta>|^2 over the invariant measure; equals
    pi/(2k-1) up to the radial-cutoff error O(eps^{2k-1})."""
    require_tag(grid, DISK_INVARIANT)
    vals = (1.0 - np.abs(grid.points) ** 2) ** (2.0 * rep.k)
    return float(np.sum(grid.weights * vals))


def identity_check(rep: DiskRep, grid: QuadratureGrid, probe_dim: int) -> float:
    """Max-norm deviation of (2k-1)/pi integral d mu |zeta><zeta| from the
    identity on the leading probe_dim block."""
    require_tag(grid, DISK_INVARIANT)
    if probe_dim > rep.cutoff // 2:
        raise ValueError("probe_dim must not exceed cutoff/2")
    amps = np.stack([
        coherent_amplitudes(rep, z, probe_dim - 1) for z in grid.points
    ])
    s = np.einsum("n,na,nb->ab", grid.weights, amps, amps.conj())
    s *= (2.0 * rep.k - 1.0) / np.pi
    return float(np.abs(s - np.eye(probe_dim)).max())


def symbol(rep: DiskRep, psi: DiskFunction, point: DiskPoint) -> complex:
    """<zeta|psi> = (1-|zeta|^2)^k psi(conj(zeta))."""
    if psi.rep != rep:
        raise ValueError("representation mismatch")
    return complex((1.0 - abs(point.zeta) ** 2) ** rep.k
                   * psi.evaluate(np.conj(point.zeta)))


def reproducing_kernel(rep: DiskRep, z1: complex, z2: complex) -> complex:
    """delta_{z1}(z2) = (1 - conj(z1) z2)^{-2k}."""
    if abs(z1) >= 1 or abs(z2) >= 1:
        raise ValueError("kernel arguments must lie in the open disk")
    return complex(np.exp(-2.0 * rep.k * np.log(1.0 - np.conj(z1) * z2)))


def reproducing_kernel_series(rep: DiskRep, z1: complex, z2: complex) -> complex:
    """Truncated series sum_n conj(f_n(z1)) f_n(z2) (oracle route)."""
    n = np.arange(rep.cutoff + 1)
    terms = np.exp(-rep._log_h) * (np.conj(z1) * z2) ** n
    return complex(np.sum(terms))


def delta_function(rep: DiskRep, z: complex) -> DiskFunction:
    """The kernel at z as an element of the space (monomial coefficients
    of (1 - conj(z) w)^{-2k} in w)."""
    n = np.arange(rep.cutoff + 1)
    return DiskFunction(rep, np.exp(-rep._log_h) * np.conj(z) ** n)
