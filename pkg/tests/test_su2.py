"""Spin coherent states: overlaps, completeness, the z-representation and
the P/Q density-matrix machinery."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from gcstates import su2
from gcstates.quadrature import euler_grid, sphere_grid
from gcstates.special import wigner_small_d

angles = st.tuples(st.floats(0.05, 3.09), st.floats(0.0, 6.28))


def random_su2(rng):
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return su2.SU2Element(complex(v[0], v[1]), complex(v[2], v[3]))


class TestGroupAndPoints:
    def test_element_is_unitary(self):
        g = su2.SU2Element(math.cos(0.4), 1j * math.sin(0.4))
        m = g.matrix
        assert np.abs(m @ m.conj().T - np.eye(2)).max() < 1e-14

    def test_bad_element_rejected(self):
        with pytest.raises(ValueError):
            su2.SU2Element(1.0, 1.0)

    def test_point_roundtrip(self):
        p = su2.SpherePoint(1.1, 2.3)
        q = su2.SpherePoint.from_vector(p.n)
        assert q.theta == pytest.approx(p.theta)
        assert q.phi == pytest.approx(p.phi)

    def test_stereographic_chart(self):
        # equator at phi=0 maps to zeta=1; south pole to 0; north to infinity
        assert su2.SpherePoint(math.pi / 2, 0.0).stereographic() == \
            pytest.approx(1.0)
        assert su2.SpherePoint(math.pi, 0.3).stereographic() == \
            pytest.approx(0.0, abs=1e-15)
        assert su2.SpherePoint(0.0, 0.3).stereographic() is None


class TestCoherentStates:
    @given(angles)
    def test_unit_norm(self, ang):
        rep = su2.spin_rep(1.5)
        v = su2.coherent_state(rep, 0.5, su2.SpherePoint(*ang))
        assert abs(np.linalg.norm(v) - 1.0) < 1e-13

    @given(angles)
    def test_weight_eigenvector_along_n(self, ang):
        # defining property: (n.J) |mu, n> = mu |mu, n>
        rep = su2.spin_rep(2)
        p = su2.SpherePoint(*ang)
        for mu in (-2, 0, 1):
            v = su2.coherent_state(rep, mu, p)
            nj = sum(c * jm for c, jm in zip(p.n, rep.J))
            assert np.abs(nj @ v - mu * v).max() < 1e-13

    def test_north_pole_is_basis_state(self):
        rep = su2.spin_rep(1)
        v = su2.coherent_state(rep, 1, su2.SpherePoint(0.0, 0.0))
        e = np.zeros(3)
        e[rep.index(1)] = 1.0
        assert np.abs(v - e).max() < 1e-15

    def test_batch_matches_single(self):
        rep = su2.spin_rep(2.5)
        thetas = np.array([0.3, 1.2, 2.9])
        phis = np.array([0.1, 4.0, 5.5])
        batch = su2.coherent_state_batch(rep, 0.5, thetas, phis)
        for i in range(3):
            single = su2.coherent_state(
                rep, 0.5, su2.SpherePoint(thetas[i], phis[i]))
            assert np.abs(batch[i] - single).max() < 1e-13


class TestOverlaps:
    def test_modulus_closed_form_general_mu(self):
        # |<mu,n'|mu,n>| = |d^j_{mu mu}(Theta)| with cos Theta = n'.n
        rep = su2.spin_rep(2)
        rng = np.random.default_rng(3)
        for _ in range(20):
            t1, t2 = rng.uniform(0.05, 3.0, size=2)
            f1, f2 = rng.uniform(0, 2 * math.pi, size=2)
            p1, p2 = su2.SpherePoint(t1, f1), su2.SpherePoint(t2, f2)
            cos_big = float(np.clip(p1.n @ p2.n, -1, 1))
            for mu in (-1, 0, 2):
                val = abs(su2.overlap(rep, mu, p1, p2))
                want = abs(wigner_small_d(2, mu, mu, math.acos(cos_big)))
                assert val == pytest.approx(want, abs=1e-12)

    def test_highest_weight_closed_form(self):
        rep = su2.spin_rep(1.5)
        p1, p2 = su2.SpherePoint(0.7, 0.2), su2.SpherePoint(2.0, 4.4)
        val = abs(su2.overlap(rep, 1.5, p1, p2)) ** 2
        assert val == pytest.approx(su2.overlap_mu_j(rep, p1, p2), abs=1e-13)

    def test_disk_overlap_matches_sphere_modulus(self):
        rep = su2.spin_rep(2)
        p1, p2 = su2.SpherePoint(1.0, 0.3), su2.SpherePoint(2.2, 5.1)
        z1, z2 = p1.stereographic(), p2.stereographic()
        lhs = abs(su2.overlap_disk(rep, z1, z2)) ** 2
        assert lhs == pytest.approx(su2.overlap_mu_j(rep, p1, p2), abs=1e-13)


class TestCompleteness:
    def test_identity_and_d_constant(self):
        grid = sphere_grid(32, 64)
        for j, mu in ((0.5, 0.5), (1, 0), (2.5, -1.5)):
            rep = su2.spin_rep(j)
            assert su2.identity_check(rep, mu, grid) < 1e-12
            d = su2.d_constant(rep, mu, grid)
            assert d == pytest.approx(4 * math.pi / (rep.two_j + 1),
                                      rel=1e-12)

    def test_rotation_covariance_of_frame_integral(self):
        # conjugating the (scalar) frame operator by T(g) leaves it fixed;
        # checked through the rotated-grid d-constant staying put
        rep = su2.spin_rep(1)
        grid = sphere_grid(32, 64)
        states = su2.coherent_state_batch(rep, 1, grid.points[:, 0],
                                          grid.points[:, 1])
        b = np.einsum("n,na,nb->ab", grid.weights, states, states.conj())
        u = rep.rotation(0.7, 1.1, 2.0)
        assert np.abs(u @ b @ u.conj().T - b).max() < 1e-11


class TestZRepresentation:
    def test_z_function_matches_rotated_state(self):
        # section states land at the label -conj(zeta) in this chart
        rep = su2.spin_rep(1.5)
        p = su2.SpherePoint(1.2, 0.8)
        for mu in (-0.5, 1.5):
            poly = su2.basis_to_z(rep, su2.coherent_state(rep, mu, p))
            ref = su2.z_function(rep, mu, -np.conj(p.stereographic()))
            ratio = poly[np.abs(ref) > 1e-10] / ref[np.abs(ref) > 1e-10]
            assert np.abs(ratio - ratio[0]).max() < 1e-12
            assert abs(abs(ratio[0]) - 1.0) < 1e-12

    def test_matrix_action_agrees_with_mobius(self):
        rep = su2.spin_rep(2)
        rng = np.random.default_rng(5)
        for _ in range(5):
            g = random_su2(rng)
            zeta = complex(*rng.normal(size=2))
            mu = 1
            lhs = su2.matrix_action_z(rep, g, su2.z_function(rep, mu, zeta))
            mob = su2.mobius_action(g, mu, zeta)
            if mob.zeta is None:
                continue
            rhs = mob.phase * su2.z_function(rep, mu, mob.zeta)
            assert np.abs(lhs - rhs).max() < 1e-12

    def test_matrix_action_is_homomorphism(self):
        rep = su2.spin_rep(1.5)
        rng = np.random.default_rng(6)
        g1, g2 = random_su2(rng), random_su2(rng)
        poly = rng.normal(size=4) + 1j * rng.normal(size=4)
        lhs = su2.matrix_action_z(rep, g1, su2.matrix_action_z(rep, g2, poly))
        rhs = su2.matrix_action_z(rep, g1 @ g2, poly)
        assert np.abs(lhs - rhs).max() < 1e-12


class TestDensityMatrices:
    def _random_rho(self, rep, seed=0):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(rep.dim, rep.dim)) \
            + 1j * rng.normal(size=(rep.dim, rep.dim))
        m = a @ a.conj().T
        return m / np.trace(m).real

    def test_density_matrix_validation(self):
        rep = su2.spin_rep(1)
        su2.DensityMatrix(rep, np.eye(3) / 3)
        with pytest.raises(ValueError):
            su2.DensityMatrix(rep, np.diag([1.0, 0.5, -0.5]))
        with pytest.raises(ValueError):
            su2.DensityMatrix(rep, np.eye(3))

    def test_q_function_range(self):
        rep = su2.spin_rep(1.5)
        rho = su2.DensityMatrix(rep, self._random_rho(rep, 2))
        for ang in ((0.4, 0.0), (2.0, 3.0), (3.0, 5.9)):
            q = su2.q_function(rho, 1.5, su2.SpherePoint(*ang))
            assert -1e-13 <= q <= 1.0 + 1e-13

    def test_p_operator_closed_form_vs_quadrature(self):
        grid = sphere_grid(48, 96)
        rep = su2.spin_rep(1.5)
        for l in range(4):
            for m in range(-l, l + 1):
                for mu in (-0.5, 1.5):
                    a = su2.p_operator(rep, mu, l, m)
                    b = su2.p_operator_quadrature(rep, mu, l, m, grid)
                    assert np.abs(a - b).max() < 1e-12

    def test_p_roundtrip(self):
        rep = su2.spin_rep(2)
        rho = self._random_rho(rep, 4)
        coeffs = su2.rho_to_p(rep, 2, rho)
        back, min_eig = su2.p_to_rho(rep, 2, coeffs)
        assert np.abs(back - rho).max() < 1e-12
        assert min_eig > -1e-12  # input was PSD; roundtrip preserves it

    def test_p_to_rho_rejects_non_hermitian_coefficients(self):
        rep = su2.spin_rep(1)
        with pytest.raises(ValueError):
            su2.p_to_rho(rep, 1, {(1, 1): 1.0 + 0j})

    def test_group_average_projector(self):
        rep = su2.spin_rep(1)
        p = su2.SpherePoint(1.0, 2.0)
        v = su2.coherent_state(rep, 1, p)
        proj = su2.group_average_projector(rep, 1, p, euler_grid(16))
        assert np.abs(proj - np.outer(v, v.conj())).max() < 1e-12


class TestRotationOracle:
    def test_rotation_matches_expm(self):
        rep = su2.spin_rep(1.5)
        phi, theta, psi = 0.6, 1.9, 3.1
        want = (expm(-1j * phi * rep.J3) @ expm(-1j * theta * rep.J2)
                @ expm(-1j * psi * rep.J3))
        assert np.abs(rep.rotation(phi, theta, psi) - want).max() < 1e-13
