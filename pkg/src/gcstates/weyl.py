"""Heisenberg-Weyl group W_N on a truncated Fock space.

Group elements (t, alpha) compose as
(s, alpha)(t, beta) = (s + t + Im(alpha . conj(beta)), alpha + beta)
and are represented by T(t, alpha) = e^{it} D(alpha) with the displacement
operator D(alpha) = exp(alpha a+ - conj(alpha) a).

Truncation rule: identities are asserted only on the lower half of the
basis; displacement leaks amplitude toward the cutoff edge, so statements
near the edge are meaningless.
"""

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .quadrature import PLANE, QuadratureGrid, require_tag


@dataclass(frozen=True)
class WeylElement:
    """Group element (t, alpha) with alpha in C^N."""

    t: float
    alpha: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha",
                           np.atleast_1d(np.asarray(self.alpha, dtype=complex)))

    @property
    def n_modes(self) -> int:
        return len(self.alpha)

    def compose(self, other: "WeylElement") -> "WeylElement":
        if self.n_modes != other.n_modes:
            raise ValueError("mode-count mismatch")
        phase = float(np.imag(np.sum(self.alpha * np.conj(other.alpha))))
        return WeylElement(self.t + other.t + phase, self.alpha + other.alpha)

    def inverse(self) -> "WeylElement":
        return WeylElement(-self.t, -self.alpha)

    @staticmethod
    def identity(n_modes: int = 1) -> "WeylElement":
        return WeylElement(0.0, np.zeros(n_modes, dtype=complex))


def weyl_compose(g1: WeylElement, g2: WeylElement) -> WeylElement:
    return g1.compose(g2)


class FockSpace:
    """Truncated Fock space: occupations 0..cutoff per mode."""

    def __init__(self, n_modes: int = 1, cutoff: int = 64):
        if n_modes < 1 or cutoff < 1:
            raise ValueError("need n_modes >= 1 and cutoff >= 1")
        self.n_modes = n_modes
        self.cutoff = cutoff
        d = cutoff + 1
        a = np.diag(np.sqrt(np.arange(1, d)), k=1).astype(complex)
        eye = np.eye(d, dtype=complex)
        self.annihilators = []
        for i in range(n_modes):
            ops = [a if m == i else eye for m in range(n_modes)]
            full = ops[0]
            for op in ops[1:]:
                full = np.kron(full, op)
            self.annihilators.append(full)
        self.dim = d**n_modes

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def number_basis_state(self, n: int) -> np.ndarray:
        """Single-mode occupation state |n> (n_modes must be 1)."""
        if self.n_modes != 1:
            raise ValueError("number_basis_state is single-mode only")
        v = np.zeros(self.dim, dtype=complex)
        v[n] = 1.0
        return v


def displacement_operator(alpha, space: FockSpace) -> np.ndarray:
    """D(alpha) = exp(alpha a+ - conj(alpha) a), exponentiated by unitary
    diagonalization of the Hermitian generator (exactly unitary on the
    truncated space).

    Emits a warning when any |alpha_i| > cutoff/4, the documented validity
    heuristic of the truncation.
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
    if len(alpha) != space.n_modes:
        raise ValueError("alpha length must equal the mode count")
    if np.any(np.abs(alpha) > space.cutoff / 4.0):
        warnings.warn(
            "displacement amplitude beyond cutoff/4: truncation error may "
            "be significant", stacklevel=2)
    gen = np.zeros((space.dim, space.dim), dtype=complex)
    for ai, a in zip(alpha, space.annihilators):
        gen += ai * a.conj().T - np.conj(ai) * a
    h = 1j * gen  # Hermitian
    lam, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * lam)) @ v.conj().T


def represent(g: WeylElement, space: FockSpace) -> np.ndarray:
    """T(t, alpha) = e^{it} D(alpha)."""
    return np.exp(1j * g.t) * displacement_operator(g.alpha, space)


def weyl_coherent_state(alpha, psi0: np.ndarray, space: FockSpace) -> np.ndarray:
    """|alpha> = D(alpha) |psi0> for an arbitrary normalized fiducial."""
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise ValueError("fiducial vector must be normalized")
    return displacement_operator(alpha, space) @ psi0


def _radial_displacements(space: FockSpace, radii) -> list[np.ndarray]:
    """D(r) for real r; D(r e^{i phi}) is recovered by conjugation with
    the number-operator phase e^{i phi n}."""
    if space.n_modes != 1:
        raise ValueError("quadrature identity check is single-mode only")
    a = space.annihilators[0]
    h = 1j * (a.conj().T - a)  # Hermitian generator at alpha = 1
    lam, v = np.linalg.eigh(h)
    return [(v * np.exp(-1j * r * lam)) @ v.conj().T for r in radii]


def weyl_identity_check(space: FockSpace, grid: QuadratureGrid,
                        psi0: np.ndarray, probe_dim: int) -> float:
    """Max-norm deviation of (1/pi) integral d^2 alpha |alpha><alpha| from
    the identity on the leading probe_dim block (N = 1)."""
    require_tag(grid, PLANE)
    if probe_dim > space.cutoff // 2:
        raise ValueError("probe_dim must not exceed cutoff/2")
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise ValueError("fiducial vector must be normalized")
    r = grid.meta["r"]
    w_r = grid.meta["w_r"]
    phi = grid.meta["phi"]
    n_phi = grid.meta["n_phi"]
    n_op = np.arange(space.dim)
    phases = np.exp(1j * np.outer(phi, n_op))          # (n_phi, dim)
    s = np.zeros((probe_dim, probe_dim), dtype=complex)
    for dr, wr in zip(_radial_displacements(space, r), w_r):
        # states at alpha = r e^{i phi}: e^{i phi n} D(r) e^{-i phi n} psi0
        x = phases.conj() * psi0[None, :]
        y = x @ dr.T
        states = (phases * y)[:, :probe_dim]
        s += wr * (2.0 * np.pi / n_phi) * np.einsum(
            "na,nb->ab", states, states.conj())
    s /= np.pi
    return float(np.abs(s - np.eye(probe_dim)).max())


# ---------------------------------------------------------------------------
# Lattices and admissibility


@dataclass
class Lattice:
    """Lattice in C^N spanned by 2N periods, with theta characteristics
    epsilon (stored for the data model; no theta state is constructed)."""

    n_modes: int
    periods: np.ndarray            # (2N, N) complex
    epsilon: np.ndarray = field(default=None)

    def __post_init__(self):
        self.periods = np.asarray(self.periods, dtype=complex)
        if self.periods.shape != (2 * self.n_modes, self.n_modes):
            raise ValueError("need 2N periods in C^N")
        if self.epsilon is None:
            self.epsilon = np.zeros(2 * self.n_modes)
        self.epsilon = np.asarray(self.epsilon, dtype=float)
        if len(self.epsilon) != 2 * self.n_modes:
            raise ValueError("need 2N theta characteristics")
        # real linear independence of the periods
        coords = np.vstack([self.periods.real.T, self.periods.imag.T])
        if abs(np.linalg.det(coords)) < 1e-12:
            raise ValueError("periods are not linearly independent over R")

    @staticmethod
    def from_json(text: str) -> "Lattice":
        data = json.loads(text)
        periods = np.array(
            [[complex(re, im) for re, im in row] for row in data["periods"]]
        )
        if periods.ndim == 2 and periods.shape[1] != data["n_modes"]:
            raise ValueError("period row length must equal n_modes")
        return Lattice(data["n_modes"], periods,
                       np.asarray(data.get("epsilon")) if "epsilon" in data else None)

    def to_json(self) -> str:
        return json.dumps({
            "n_modes": self.n_modes,
            "periods": [[[w.real, w.imag] for w in row] for row in self.periods],
            "epsilon": list(self.epsilon),
        }, sort_keys=True)

    def cell_area(self) -> float:
        """Volume of the fundamental cell in d^2 alpha units (N = 1)."""
        if self.n_modes != 1:
            raise ValueError("cell_area is single-mode only")
        w1, w2 = self.periods[0, 0], self.periods[1, 0]
        return abs(float(np.imag(np.conj(w1) * w2)))


@dataclass
class AdmissibilityReport:
    admissible: bool
    matrix: np.ndarray      # rounded integer matrix B
    max_deviation: float

    def to_json(self) -> str:
        return json.dumps({
            "admissible": self.admissible,
            "matrix": self.matrix.tolist(),
            "max_deviation": self.max_deviation,
        }, sort_keys=True)


def lattice_admissible(lat: Lattice, tol: float = 1e-9) -> AdmissibilityReport:
    """B_ij = (1/pi) Im(omega_i . conj(omega_j)); the lattice is admissible
    iff every entry is an integer (within tol)."""
    b = np.imag(lat.periods @ lat.periods.conj().T) / np.pi
    rounded = np.rint(b)
    dev = float(np.abs(b - rounded).max())
    return AdmissibilityReport(dev <= tol, rounded.astype(int), dev)


def von_neumann_lattice(scale: float = 1.0) -> Lattice:
    """N=1 lattice with periods sqrt(pi)*scale and i*sqrt(pi)*scale
    (cell area pi at scale 1)."""
    s = math.sqrt(math.pi) * scale
    return Lattice(1, np.array([[s], [1j * s]]))
