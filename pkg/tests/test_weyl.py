"""Heisenberg-Weyl group: composition, displacement operators, the main
identity and lattice admissibility."""

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gcstates import weyl
from gcstates.quadrature import plane_grid

small_c = st.complex_numbers(max_magnitude=3.0, allow_nan=False,
                             allow_infinity=False)


class TestGroupLaw:
    def test_composition_phase(self):
        g1 = weyl.WeylElement(0.1, [1.0 + 0.5j])
        g2 = weyl.WeylElement(0.2, [0.3 - 1.0j])
        g = g1.compose(g2)
        want = 0.3 + np.imag((1.0 + 0.5j) * np.conj(0.3 - 1.0j))
        assert g.t == pytest.approx(want)
        assert g.alpha[0] == pytest.approx(1.3 - 0.5j)

    def test_inverse_and_identity(self):
        g = weyl.WeylElement(0.7, [0.4 + 0.9j])
        gi = g.compose(g.inverse())
        assert gi.t == pytest.approx(0.0)
        assert abs(gi.alpha[0]) < 1e-15

    @given(small_c, small_c, small_c)
    def test_associativity(self, a, b, c):
        g1 = weyl.WeylElement(0.0, [a])
        g2 = weyl.WeylElement(0.0, [b])
        g3 = weyl.WeylElement(0.0, [c])
        lhs = g1.compose(g2).compose(g3)
        rhs = g1.compose(g2.compose(g3))
        assert lhs.t == pytest.approx(rhs.t, abs=1e-12)
        assert abs(lhs.alpha[0] - rhs.alpha[0]) < 1e-12


class TestDisplacement:
    def test_commutator_on_lower_block(self):
        space = weyl.FockSpace(1, 32)
        a = space.annihilators[0]
        comm = a @ a.conj().T - a.conj().T @ a
        assert np.abs(comm[:16, :16] - np.eye(16)).max() < 1e-13

    def test_unitary(self):
        space = weyl.FockSpace(1, 32)
        d = weyl.displacement_operator(0.8 - 0.3j, space)
        assert np.abs(d @ d.conj().T - np.eye(space.dim)).max() < 1e-13

    def test_vacuum_coherent_coefficients(self):
        # <n|alpha> = e^{-|alpha|^2/2} alpha^n / sqrt(n!)
        space = weyl.FockSpace(1, 48)
        alpha = 1.0 + 0.5j
        v = weyl.weyl_coherent_state(alpha, space.vacuum(), space)
        for n in range(8):
            want = (math.exp(-abs(alpha) ** 2 / 2) * alpha**n
                    / math.sqrt(math.factorial(n)))
            assert abs(v[n] - want) < 1e-13

    def test_composition_law(self):
        # D(a) D(b) = e^{i Im(a conj(b))} D(a + b) on the lower half-basis
        space = weyl.FockSpace(1, 64)
        a, b = 0.7 + 0.2j, -0.4 + 0.9j
        lhs = (weyl.displacement_operator(a, space)
               @ weyl.displacement_operator(b, space))
        rhs = (np.exp(1j * np.imag(a * np.conj(b)))
               * weyl.displacement_operator(a + b, space))
        h = space.dim // 2
        assert np.abs(lhs[:h, :h] - rhs[:h, :h]).max() < 1e-8

    def test_overlap_gaussian(self):
        space = weyl.FockSpace(1, 64)
        v0 = space.vacuum()
        a, b = 0.9 - 0.4j, -0.2 + 1.1j
        s = np.vdot(weyl.weyl_coherent_state(a, v0, space),
                    weyl.weyl_coherent_state(b, v0, space))
        want = (math.exp(-abs(a - b) ** 2 / 2)
                * np.exp(-1j * np.imag(a * np.conj(b))))
        assert abs(s - want) < 1e-12

    def test_large_amplitude_warns(self):
        space = weyl.FockSpace(1, 16)
        with pytest.warns(UserWarning):
            weyl.displacement_operator(5.0, space)


class TestMainIdentity:
    def test_vacuum_fiducial(self):
        space = weyl.FockSpace(1, 64)
        grid = plane_grid(7.0, 56, 96)
        dev = weyl.weyl_identity_check(space, grid, space.vacuum(), 8)
        assert dev < 1e-10

    def test_excited_fiducial_radius_seven(self):
        # a radius-7 integration domain keeps the radial tail below 1e-11
        # for probe indices <= 7; radius 6 leaves a ~1e-7 tail
        space = weyl.FockSpace(1, 64)
        grid = plane_grid(7.0, 56, 96)
        psi1 = space.number_basis_state(1)
        dev = weyl.weyl_identity_check(space, grid, psi1, 8)
        assert dev < 1e-10

    def test_probe_dim_guard(self):
        space = weyl.FockSpace(1, 16)
        grid = plane_grid(4.0, 16, 32)
        with pytest.raises(ValueError):
            weyl.weyl_identity_check(space, grid, space.vacuum(), 12)


class TestLattices:
    def test_von_neumann_cell_area(self):
        lat = weyl.von_neumann_lattice()
        assert lat.cell_area() == pytest.approx(math.pi)

    def test_worked_examples(self):
        # cell area pi: admissible with B = [[0,-1],[1,0]]
        rep = weyl.lattice_admissible(weyl.von_neumann_lattice())
        assert rep.admissible
        assert rep.matrix.tolist() == [[0, -1], [1, 0]]
        # cell area pi/2: inadmissible
        rep2 = weyl.lattice_admissible(
            weyl.von_neumann_lattice(1.0 / math.sqrt(2.0)))
        assert not rep2.admissible
        # integer-scaled sublattice: admissible again
        rep3 = weyl.lattice_admissible(
            weyl.von_neumann_lattice(math.sqrt(3.0)))
        assert rep3.admissible
        assert rep3.matrix.tolist() == [[0, -3], [3, 0]]

    def test_json_roundtrip(self):
        lat = weyl.Lattice(1, np.array([[1.0 + 0j], [0.5 + 2.0j]]),
                           np.array([0.5, 0.0]))
        back = weyl.Lattice.from_json(lat.to_json())
        assert np.abs(back.periods - lat.periods).max() < 1e-15
        assert np.abs(back.epsilon - lat.epsilon).max() < 1e-15
        assert json.loads(lat.to_json())["n_modes"] == 1

    def test_degenerate_periods_rejected(self):
        with pytest.raises(ValueError):
            weyl.Lattice(1, np.array([[1.0 + 0j], [2.0 + 0j]]))

    def test_admissibility_report_json(self):
        rep = weyl.lattice_admissible(weyl.von_neumann_lattice())
        data = json.loads(rep.to_json())
        assert data["admissible"] is True
        assert data["max_deviation"] < 1e-12
