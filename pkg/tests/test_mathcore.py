"""Half-integer bookkeeping, special functions and quadrature grids."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.special import eval_jacobi

from gcstates.halfint import check_character, twice, weight_index
from gcstates.quadrature import (disk_grid, disk_invariant_grid, euler_grid,
                                 plane_grid, require_tag, sphere_grid)
from gcstates.special import (clebsch_gordan, jacobi_polynomial,
                              spherical_harmonic, wigner_small_d)


class TestHalfint:
    def test_twice_values(self):
        assert twice(0.5) == 1
        assert twice(3) == 6
        assert twice(2.5) == 5
        assert twice(0) == 0

    def test_twice_rejects_non_half_integers(self):
        with pytest.raises(ValueError):
            twice(0.3)

    def test_character_check(self):
        check_character(3, 1)  # j=3/2, m=1/2
        with pytest.raises(ValueError):
            check_character(3, 2)  # parity mismatch
        with pytest.raises(ValueError):
            check_character(3, 5)  # out of range

    def test_weight_index_ascending(self):
        # j=3/2: m = -3/2, -1/2, 1/2, 3/2 -> 0..3
        assert [weight_index(3, t) for t in (-3, -1, 1, 3)] == [0, 1, 2, 3]


class TestWignerD:
    def test_spin_half_closed_form(self):
        theta = 0.7
        assert wigner_small_d(0.5, 0.5, 0.5, theta) == pytest.approx(
            math.cos(theta / 2), abs=1e-15)
        assert wigner_small_d(0.5, 0.5, -0.5, theta) == pytest.approx(
            -math.sin(theta / 2), abs=1e-15)

    def test_identity_at_zero(self):
        for mu in (-1.5, -0.5, 0.5, 1.5):
            for nu in (-1.5, -0.5, 0.5, 1.5):
                val = wigner_small_d(1.5, mu, nu, 0.0)
                assert val == pytest.approx(1.0 if mu == nu else 0.0,
                                            abs=1e-15)

    def test_against_matrix_exponential(self):
        # independent oracle: exponentiate J2 explicitly for j = 2
        j = 2
        dim = 2 * j + 1
        m = np.arange(dim) - j
        jp = np.zeros((dim, dim))
        for i in range(dim - 1):
            jp[i + 1, i] = math.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
        j2 = (jp - jp.T) / 2j
        theta = 1.234
        u = expm(-1j * theta * j2)
        for a in range(dim):
            for b in range(dim):
                assert wigner_small_d(j, m[a], m[b], theta) == pytest.approx(
                    u[a, b].real, abs=1e-13)
                assert abs(u[a, b].imag) < 1e-13

    @given(st.floats(0.01, 3.13), st.integers(1, 6))
    def test_row_orthogonality(self, theta, two_j):
        j = two_j / 2
        mus = np.arange(-j, j + 1)
        d = np.array([[wigner_small_d(j, a, b, theta) for b in mus]
                      for a in mus])
        assert np.abs(d @ d.T - np.eye(len(mus))).max() < 1e-12


class TestJacobi:
    @given(st.integers(0, 10), st.floats(-0.5, 3.0), st.floats(-0.5, 3.0),
           st.floats(-1.0, 1.0))
    def test_against_scipy(self, n, a, b, x):
        assert jacobi_polynomial(n, a, b, x) == pytest.approx(
            float(eval_jacobi(n, a, b, x)), rel=1e-10, abs=1e-10)

    def test_diagonal_wigner_reduction(self):
        # d^j_{mu mu}(theta) = cos(theta/2)^{2 mu} P^{(0, 2 mu)}_{j - mu}
        j, mu, theta = 3, 1, 0.9
        lhs = wigner_small_d(j, mu, mu, theta)
        rhs = (math.cos(theta / 2) ** (2 * mu)
               * jacobi_polynomial(j - mu, 0, 2 * mu, math.cos(theta)))
        assert lhs == pytest.approx(rhs, abs=1e-14)


class TestClebschGordan:
    def test_half_half_coupling(self):
        # singlet/triplet decomposition of two spin-1/2
        s = 1 / math.sqrt(2)
        assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) == pytest.approx(s)
        assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0, 0) == pytest.approx(s)
        assert clebsch_gordan(0.5, -0.5, 0.5, 0.5, 0, 0) == pytest.approx(-s)
        assert clebsch_gordan(0.5, 0.5, 0.5, 0.5, 1, 1) == pytest.approx(1.0)

    def test_selection_rules(self):
        assert clebsch_gordan(1, 1, 1, 1, 1, 1) == 0.0  # M != m1+m2
        assert clebsch_gordan(1, 0, 1, 0, 3, 0) == 0.0  # triangle violation

    @given(st.integers(1, 4), st.integers(1, 4))
    def test_unitarity(self, two_j1, two_j2):
        # rows of the coupling matrix are orthonormal
        j1, j2 = two_j1 / 2, two_j2 / 2
        pairs = [(m1, m2) for m1 in np.arange(-j1, j1 + 1)
                 for m2 in np.arange(-j2, j2 + 1)]
        coupled = [(J, M) for J in np.arange(abs(j1 - j2), j1 + j2 + 1)
                   for M in np.arange(-J, J + 1)]
        mat = np.array([[clebsch_gordan(j1, m1, j2, m2, J, M)
                         for (J, M) in coupled] for (m1, m2) in pairs])
        assert np.abs(mat @ mat.T - np.eye(len(pairs))).max() < 1e-12


class TestSphericalHarmonics:
    def test_low_order_closed_forms(self):
        theta, phi = 0.8, 2.1
        assert spherical_harmonic(0, 0, theta, phi) == pytest.approx(
            1 / math.sqrt(4 * math.pi))
        assert spherical_harmonic(1, 0, theta, phi) == pytest.approx(
            math.sqrt(3 / (4 * math.pi)) * math.cos(theta))
        expected = (-math.sqrt(3 / (8 * math.pi)) * math.sin(theta)
                    * np.exp(1j * phi))
        assert spherical_harmonic(1, 1, theta, phi) == pytest.approx(expected)

    def test_conjugation_symmetry(self):
        theta, phi = 1.1, 0.4
        for l in range(4):
            for m in range(l + 1):
                lhs = spherical_harmonic(l, -m, theta, phi)
                rhs = (-1) ** m * np.conj(spherical_harmonic(l, m, theta, phi))
                assert lhs == pytest.approx(rhs, abs=1e-13)

    def test_orthonormality_on_grid(self):
        grid = sphere_grid(32, 64)
        th, ph = grid.points[:, 0], grid.points[:, 1]
        funcs = [(l, m, spherical_harmonic(l, m, th, ph))
                 for l in range(4) for m in range(-l, l + 1)]
        for i, (l1, m1, y1) in enumerate(funcs):
            for l2, m2, y2 in funcs[i:]:
                val = np.sum(grid.weights * np.conj(y1) * y2)
                want = 1.0 if (l1, m1) == (l2, m2) else 0.0
                assert abs(val - want) < 1e-12


class TestGrids:
    def test_total_weights(self):
        assert sphere_grid(16, 32).total_weight == pytest.approx(
            4 * math.pi, rel=1e-13)
        assert plane_grid(3.0, 16, 32).total_weight == pytest.approx(
            math.pi * 9.0, rel=1e-13)
        assert disk_grid(1.5, 24, 48).total_weight == pytest.approx(
            1.0, rel=1e-13)
        assert euler_grid(8).total_weight == pytest.approx(
            16 * math.pi**2, rel=1e-13)

    def test_plane_gaussian_integral(self):
        grid = plane_grid(6.0, 48, 96)
        val = grid.integrate(np.exp(-np.abs(grid.points) ** 2))
        assert abs(val - math.pi) < 1e-13

    def test_disk_grid_polynomial_moments(self):
        # integral d mu_k |z|^{2n} = B(n+1, 2k-1) * (2k-1) exactly
        k = 2.0
        grid = disk_grid(k, 32, 64)
        for n in range(5):
            val = grid.integrate(np.abs(grid.points) ** (2 * n)).real
            want = (2 * k - 1) * math.gamma(n + 1) * math.gamma(2 * k - 1) \
                / math.gamma(n + 2 * k)
            assert abs(val - want) < 1e-14

    def test_invariant_grid_reproduces_d(self):
        k = 2.0
        grid = disk_invariant_grid(48, 96)
        val = grid.integrate((1 - np.abs(grid.points) ** 2) ** (2 * k)).real
        assert abs(val - math.pi / (2 * k - 1)) < 1e-10

    def test_measure_tags_enforced(self):
        grid = sphere_grid(4, 8)
        require_tag(grid, "sphere_dn")
        with pytest.raises(ValueError):
            require_tag(grid, "plane_d2alpha")

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            disk_grid(0.5)
        with pytest.raises(ValueError):
            plane_grid(-1.0)
        with pytest.raises(ValueError):
            disk_invariant_grid(eps=0.0)
