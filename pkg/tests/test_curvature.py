"""Curvature tests against closed forms for the product-cigar family.

Frozen oracles (single cigar factor, t = |z|^2):
  metric g = 1/(1+t); curvature R_1111 = 1/(1+t)^3, so R(0) = 1 and
  R(t=1) = 1/8; Christoffel Gamma^1_11 = -conj(z)/(1+t); holomorphic
  sectional curvature along a coordinate axis = 1/(1+t).
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from darbouxkit import (
    CigarProductPotential,
    SolitonProfile,
    christoffel_at,
    curvature_at,
    curvature_symmetry_residual,
    flat_potential,
    holomorphic_sectional,
    metric_at,
    metric_z_derivative,
    poly_test_model,
    radial_coords,
    shipped_models,
    soliton_potential,
)

small_complex = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


class TestCigarClosedForm:
    def test_curvature_at_origin(self):
        r = curvature_at(CigarProductPotential(1), [0.0])
        assert r[0, 0, 0, 0] == pytest.approx(1.0, abs=1e-14)

    def test_curvature_at_t_one(self):
        r = curvature_at(CigarProductPotential(1), [1.0])
        assert r[0, 0, 0, 0] == pytest.approx(0.125, rel=1e-12)

    @given(z=small_complex)
    def test_identity_property(self, z):
        t = abs(z) ** 2
        r = curvature_at(CigarProductPotential(1), [z])
        assert r[0, 0, 0, 0].real * (1.0 + t) ** 3 == pytest.approx(1.0, abs=1e-10)
        assert abs(r[0, 0, 0, 0].imag) <= 1e-12

    def test_mixed_components_vanish(self, rng):
        model = CigarProductPotential(3)
        for _ in range(10):
            z = 2.0 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
            r = curvature_at(model, z)
            mask = np.ones((3,) * 4, dtype=bool)
            idx = np.arange(3)
            mask[idx, idx, idx, idx] = False
            assert np.max(np.abs(r[mask])) <= 1e-12

    @given(z=small_complex)
    def test_christoffel_closed_form(self, z):
        gamma = christoffel_at(CigarProductPotential(1), [z])
        expected = -np.conj(z) / (1.0 + abs(z) ** 2)
        assert gamma[0, 0, 0] == pytest.approx(expected, rel=1e-12, abs=1e-13)

    @given(z=small_complex)
    def test_sectional_closed_form(self, z):
        val = holomorphic_sectional(CigarProductPotential(1), [z], [1.0])
        assert val == pytest.approx(1.0 / (1.0 + abs(z) ** 2), rel=1e-10)

    def test_sectional_diagonal_direction(self):
        # two orthogonal cigar factors at the origin: R(v,v,v,v) = |v1|^4 + |v2|^4,
        # g(v,v)^2 = (|v1|^2 + |v2|^2)^2, so the diagonal direction gives 1/2
        val = holomorphic_sectional(CigarProductPotential(2), [0.0, 0.0], [1.0, 1.0])
        assert val == pytest.approx(0.5, rel=1e-13)


class TestFlat:
    def test_zero_curvature_and_christoffel(self, rng):
        model = flat_potential(2)
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert np.max(np.abs(curvature_at(model, z))) == 0.0
        assert np.max(np.abs(christoffel_at(model, z))) == 0.0
        assert np.max(np.abs(metric_z_derivative(model, z))) == 0.0


class TestSymmetries:
    @pytest.mark.parametrize("make", [
        lambda: CigarProductPotential(2),
        lambda: soliton_potential(SolitonProfile(2)),
        poly_test_model,
    ])
    def test_tensor_symmetries(self, make, rng):
        model = make()
        for _ in range(8):
            z = 2.0 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
            r = curvature_at(model, z)
            assert curvature_symmetry_residual(r) <= 1e-10

    def test_first_derivative_symmetric_in_holomorphic_slots(self, rng):
        model = soliton_potential(SolitonProfile(2))
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        d = metric_z_derivative(model, z)
        # d g_{i lbar} / dz_j is symmetric in (i, j)
        assert np.max(np.abs(d - np.transpose(d, (2, 1, 0)))) <= 1e-13


class TestFiniteDifferencePath:
    @pytest.mark.parametrize("model", shipped_models(), ids=lambda m: m.name)
    def test_fd_matches_analytic(self, model, rng):
        for _ in range(4):
            z = 1.5 * (rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n))
            ra = curvature_at(model, z, method="analytic")
            rf = curvature_at(model, z, method="fd")
            assert np.max(np.abs(ra - rf)) <= 1e-5

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            curvature_at(flat_potential(1), [0.1], method="magic")


class TestFirstDerivativeTensor:
    def test_matches_fd_of_metric(self, rng):
        model = soliton_potential(SolitonProfile(2))
        z = 0.8 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        d = metric_z_derivative(model, z)
        h = 1e-5  # large enough that profile-solver noise (~1e-13) stays small
        for j in range(2):
            dz = np.zeros(2, dtype=complex)
            dz[j] = h
            gp = metric_at(model, z + dz)
            gm = metric_at(model, z - dz)
            dz[j] = 1j * h
            gp_i = metric_at(model, z + dz)
            gm_i = metric_at(model, z - dz)
            wirtinger = ((gp - gm) - 1j * (gp_i - gm_i)) / (4.0 * h)
            assert np.max(np.abs(d[:, :, j] - wirtinger)) <= 5e-8

    def test_christoffel_solves_metric_equation(self, rng):
        # Gamma^m_ij = g^{m lbar} d_i g_{j lbar}: contract back with the metric
        model = poly_test_model()
        z = 0.7 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        g = metric_at(model, z)
        gamma = christoffel_at(model, z)
        d = metric_z_derivative(model, z)
        rebuilt = np.einsum("ml,mij->ilj", g, gamma)
        # rebuilt[i,l,j] should equal d[(j,l,i)] ordering d g_{j lbar l}/dz_i
        assert np.max(np.abs(rebuilt - np.transpose(d, (2, 1, 0)))) <= 1e-12


class TestSectionalGeneralProperties:
    @given(scale=st.floats(min_value=0.1, max_value=2.0))
    def test_scale_invariance_in_velocity(self, scale):
        model = soliton_potential(SolitonProfile(2))
        z = np.array([0.4 + 0.2j, -0.1 + 0.5j])
        v = np.array([1.0 + 0.3j, 0.2 - 0.7j])
        a = holomorphic_sectional(model, z, v)
        b = holomorphic_sectional(model, z, scale * v)
        assert b == pytest.approx(a, rel=1e-11)

    def test_cigar_sectional_positive(self, rng):
        model = CigarProductPotential(2)
        for _ in range(10):
            z = 2.0 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
            v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            assert holomorphic_sectional(model, z, v) > 0.0
