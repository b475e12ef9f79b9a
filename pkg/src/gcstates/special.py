"""Special functions: Wigner small-d, Jacobi polynomials, Clebsch-Gordan
coefficients and spherical harmonics.

Conventions: Condon-Shortley phases throughout; d^j_{mu nu}(theta) is the
matrix element <j mu| exp(-i theta J_2) |j nu> in the basis where J_3 is
diagonal with eigenvalues -j..j.
"""

import math

import numpy as np
from scipy.special import lpmv

from .halfint import check_character, twice


def _lfact(n: int) -> float:
    # log(n!) for integer n >= 0
    return math.lgamma(n + 1)


def wigner_small_d(j, mu, nu, theta: float) -> float:
    """d^j_{mu nu}(theta) = <j mu| exp(-i theta J_2) |j nu>.

    Evaluated by the explicit Wigner sum with log-factorials; stable for
    j <= 25.
    """
    two_j, two_mu, two_nu = twice(j), twice(mu), twice(nu)
    check_character(two_j, two_mu, "mu")
    check_character(two_j, two_nu, "nu")
    if two_j > 50:
        raise ValueError("wigner_small_d supports j <= 25")

    # integer combinations (all exact)
    jpm = (two_j + two_mu) // 2   # j + mu
    jmm = (two_j - two_mu) // 2   # j - mu
    jpn = (two_j + two_nu) // 2   # j + nu
    jmn = (two_j - two_nu) // 2   # j - nu
    dm = (two_mu - two_nu) // 2   # mu - nu

    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    pref = 0.5 * (_lfact(jpm) + _lfact(jmm) + _lfact(jpn) + _lfact(jmn))

    total = 0.0
    for k in range(max(0, -dm), min(jpn, jmm) + 1):
        # exponent bookkeeping: (cos)^{2j+nu-mu-2k} (sin)^{mu-nu+2k}
        pc = jpn + jmm - 2 * k  # = 2j + nu - mu - 2k
        ps = dm + 2 * k
        if (c == 0.0 and pc > 0) or (s == 0.0 and ps > 0):
            continue
        ln = pref - (_lfact(jpn - k) + _lfact(k) + _lfact(dm + k) + _lfact(jmm - k))
        term = ((-1.0) ** (dm + k)) * math.exp(ln)
        term *= (c**pc if pc else 1.0) * (s**ps if ps else 1.0)
        total += term
    return total


def jacobi_polynomial(n: int, a: float, b: float, x) -> float:
    """Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if p0.ndim else float(p0)
    p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for m in range(2, n + 1):
        c = 2.0 * m + a + b
        a1 = 2.0 * m * (m + a + b) * (c - 2.0)
        a2 = (c - 1.0) * (a * a - b * b)
        a3 = (c - 1.0) * c * (c - 2.0)
        a4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * c
        p0, p1 = p1, ((a2 + a3 * x) * p1 - a4 * p0) / a1
    return p1 if p1.ndim else float(p1)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient (j1,m1; j2,m2 | J,M), Condon-Shortley
    convention, via the Racah closed-form sum.

    Returns 0 when M != m1+m2 or the triangle rule is violated.
    """
    tj1, tm1 = twice(j1), twice(m1)
    tj2, tm2 = twice(j2), twice(m2)
    tJ, tM = twice(J), twice(M)
    check_character(tj1, tm1, "m1")
    check_character(tj2, tm2, "m2")
    check_character(tJ, tM, "M")

    if tM != tm1 + tm2:
        return 0.0
    # triangle rule |j1-j2| <= J <= j1+j2, with matching character
    if tJ < abs(tj1 - tj2) or tJ > tj1 + tj2 or (tj1 + tj2 - tJ) % 2 != 0:
        return 0.0

    # all of the following are exact non-negative integers
    t1 = (tj1 + tj2 - tJ) // 2
    t2 = (tj1 - tj2 + tJ) // 2
    t3 = (-tj1 + tj2 + tJ) // 2
    t4 = (tj1 + tj2 + tJ) // 2 + 1
    pref = 0.5 * (
        math.log(tJ + 1.0)
        + _lfact(t1) + _lfact(t2) + _lfact(t3) - _lfact(t4)
        + _lfact((tJ + tM) // 2) + _lfact((tJ - tM) // 2)
        + _lfact((tj1 - tm1) // 2) + _lfact((tj1 + tm1) // 2)
        + _lfact((tj2 - tm2) // 2) + _lfact((tj2 + tm2) // 2)
    )

    k_min = max(0, (tj2 - tJ - tm1) // 2, (tj1 - tJ + tm2) // 2)
    k_max = min(t1, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = 0.0
    for k in range(k_min, k_max + 1):
        ln = pref - (
            _lfact(k)
            + _lfact(t1 - k)
            + _lfact((tj1 - tm1) // 2 - k)
            + _lfact((tj2 + tm2) // 2 - k)
            + _lfact((tJ - tj2 + tm1) // 2 + k)
            + _lfact((tJ - tj1 - tm2) // 2 + k)
        )
        total += ((-1.0) ** k) * math.exp(ln)
    return total


def spherical_harmonic(l: int, m: int, theta, phi):
    """Orthonormal spherical harmonic Y_{l,m}(theta, phi), physics
    convention with Condon-Shortley phase (theta = polar angle)."""
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    am = abs(m)
    norm = math.exp(
        0.5 * (math.log(2 * l + 1.0) - math.log(4.0 * math.pi)
               + _lfact(l - am) - _lfact(l + am))
    )
    # lpmv includes the Condon-Shortley (-1)^m factor
    y = norm * lpmv(am, l, np.cos(theta)) * np.exp(1j * am * phi)
    if m < 0:
        y = (-1.0) ** am * np.conj(y)
    return y if y.ndim else complex(y)


__all__ = [
    "wigner_small_d",
    "jacobi_polynomial",
    "clebsch_gordan",
    "spherical_harmonic",
]
