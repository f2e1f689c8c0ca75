"""Profile solver tests against independently derived closed-form values.

Frozen oracles used below (derived by hand / high-precision arithmetic):
  F_1(x) = e^x - 1                      => F_1(1) = e - 1
  F_2(x) = e^x (x - 1) + 1              => F_2(1) = 1
  F_3(x) = e^x (x^2 - 2x + 2) - 2       => F_3(1) = e - 2
  n=1:    u'(t) = log(1 + e^t), u''(t) = e^t/(1+e^t),
          so u'(0) = log 2, u''(0) = 1/2, u'''(0) = 1/4.
  n=2 series: u'(t) = e^t - e^{2t}/3 + (11/72) e^{3t} + O(e^{4t}).
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from darbouxkit import FIntegral, SolitonProfile, f_eval, profile_table

NS = (1, 2, 3, 5)


class TestFIntegral:
    @pytest.mark.parametrize(
        "n,x,expected",
        [
            (1, 1.0, math.e - 1.0),
            (2, 1.0, 1.0),
            (3, 1.0, math.e - 2.0),
            (1, 0.0, 0.0),
            (2, 0.0, 0.0),
        ],
    )
    def test_closed_form_values(self, n, x, expected):
        assert FIntegral(n).eval(x) == pytest.approx(expected, rel=1e-14, abs=1e-15)

    @pytest.mark.parametrize("n", NS)
    def test_matches_quadrature(self, n):
        from scipy.integrate import quad

        f = FIntegral(n)
        for x in (0.05, 0.3, 0.5001, 1.7, 6.0):
            ref, err = quad(lambda s: s ** (n - 1) * math.exp(s), 0.0, x)
            assert f.eval(x) == pytest.approx(ref, rel=1e-12, abs=2 * err)

    @pytest.mark.parametrize("n", NS)
    def test_series_closed_form_crossover(self, n):
        # the two evaluation branches must agree where they meet
        f = FIntegral(n)
        for x in (0.4999, 0.5, 0.5001):
            assert f._series(x) == pytest.approx(f.eval(x), rel=1e-13)

    @pytest.mark.parametrize("n", NS)
    def test_derivative_is_integrand(self, n):
        f = FIntegral(n)
        for x in (0.1, 1.0, 4.0):
            assert f.derivative(x) == pytest.approx(x ** (n - 1) * math.exp(x), rel=1e-14)

    @pytest.mark.parametrize("n", NS)
    def test_log_eval_consistent(self, n):
        f = FIntegral(n)
        for x in (2.0, 30.0, 400.0):
            assert f.log_eval(x) == pytest.approx(math.log(f.eval(x)), rel=1e-13)
        # far beyond overflow: log F_n(x) ~ x + (n-1) log x
        big = 1e5
        assert f.log_eval(big) == pytest.approx(big + (n - 1) * math.log(big), rel=1e-8)

    @pytest.mark.parametrize("n", NS)
    def test_log_derivative_consistent(self, n):
        f = FIntegral(n)
        for x in (2.0, 50.0):
            assert f.log_derivative(x) == pytest.approx(
                f.derivative(x) / f.eval(x), rel=1e-12
            )

    def test_f_eval_helper(self):
        f = FIntegral(2)
        assert f_eval(f, 1.0) == f.eval(1.0)

    @given(st.floats(min_value=1e-6, max_value=0.499))
    def test_series_positive_below_cutoff(self, x):
        # integrand is positive, so F must be positive and increasing
        f = FIntegral(2)
        assert 0.0 < f.eval(x) < f.eval(0.5)


class TestProfileOracles:
    def test_n1_values_at_zero(self):
        p = SolitonProfile(1)
        assert p.u_prime(0.0) == pytest.approx(math.log(2.0), abs=1e-14)
        assert p.u_second(0.0) == pytest.approx(0.5, abs=1e-13)
        assert p.u_third(0.0) == pytest.approx(0.25, abs=1e-12)

    def test_n1_closed_form_on_grid(self):
        p = SolitonProfile(1)
        for t in np.linspace(-20.0, 20.0, 101):
            expected = np.logaddexp(0.0, t)  # log(1 + e^t)
            assert p.u_prime(t) == pytest.approx(expected, rel=1e-12, abs=1e-13)
            assert p.u_second(t) == pytest.approx(
                math.exp(t - expected), rel=1e-11, abs=1e-13
            )

    def test_n2_series_coefficients(self):
        b = SolitonProfile(2).series_coefficients()
        assert b[1] == pytest.approx(1.0, abs=0.0)
        assert b[2] == pytest.approx(-1.0 / 3.0, rel=1e-14)
        assert b[3] == pytest.approx(11.0 / 72.0, rel=1e-13)

    @pytest.mark.parametrize("n", (1, 2, 3))
    def test_leading_series_coefficient_is_one(self, n):
        assert SolitonProfile(n).series_coefficients()[1] == pytest.approx(1.0, abs=1e-15)

    def test_deep_negative_t_asymptotics(self):
        # u'(t) ~ e^t as t -> -inf for every n
        for n in (1, 2, 3):
            p = SolitonProfile(n)
            assert p.u_prime(-30.0) == pytest.approx(math.exp(-30.0), rel=1e-6)

    def test_derivatives_tuple_matches_parts(self):
        p = SolitonProfile(2)
        for t in (-7.0, 0.3, 4.0):
            d = p.derivatives(t)
            assert d == (p.u_prime(t), p.u_second(t), p.u_third(t), p.u_fourth(t))


class TestProfileResiduals:
    @pytest.mark.parametrize("n", (1, 2, 3))
    def test_ode_residual_on_grid(self, n):
        p = SolitonProfile(n)
        worst = max(abs(p.ode_residual(t)) for t in np.linspace(-10.0, 10.0, 200))
        assert worst <= 1e-9

    @pytest.mark.parametrize("n", (1, 2, 3))
    @pytest.mark.parametrize("t", (-400.0, -25.0, -3.0001, -2.9999, 0.0, 19.99, 20.01, 400.0))
    def test_residuals_at_branch_seams(self, n, t):
        # grid straddles the series/Newton and Newton/log-branch switchovers
        p = SolitonProfile(n)
        assert abs(p.ode_residual(t)) <= 1e-9
        assert abs(p.inversion_residual(t)) <= 1e-9

    @given(st.integers(min_value=1, max_value=4), st.floats(min_value=-50.0, max_value=50.0))
    def test_ode_residual_property(self, n, t):
        assert abs(SolitonProfile(n).ode_residual(t)) <= 1e-8

    @given(st.integers(min_value=1, max_value=3), st.floats(min_value=-30.0, max_value=30.0))
    def test_profile_monotone_convex_data(self, n, t):
        # u' and u'' are positive; u' is increasing (u'' > 0)
        p = SolitonProfile(n)
        assert p.u_prime(t) > 0.0
        assert p.u_second(t) > 0.0

    @pytest.mark.parametrize("n", (1, 2, 3))
    def test_limits_at_large_t(self, n):
        p = SolitonProfile(n)
        t = 200.0
        assert abs(p.u_prime(t) / t - n) <= 0.05 * n
        assert abs(p.u_second(t) - n) <= 0.05

    def test_branch_continuity(self):
        # u' values from adjacent branches agree across each seam
        for n in (1, 2, 3):
            p = SolitonProfile(n)
            for seam in (-3.0, 60.0 / n):
                lo, hi = p.u_prime(seam - 1e-9), p.u_prime(seam + 1e-9)
                assert hi == pytest.approx(lo, rel=1e-8)


class TestProfileTable:
    def test_shape_and_columns(self):
        tbl = profile_table(SolitonProfile(2), -5.0, 5.0, 11)
        assert tbl.shape == (11, 4)
        assert tbl[0, 0] == -5.0 and tbl[-1, 0] == 5.0
        p = SolitonProfile(2)
        assert tbl[5, 1] == pytest.approx(p.u_prime(0.0))
        assert tbl[5, 2] == pytest.approx(p.u_second(0.0))
        assert np.max(np.abs(tbl[:, 3])) <= 1e-12


class TestValidation:
    def test_bad_n_rejected(self):
        with pytest.raises(ValueError):
            SolitonProfile(0)
        with pytest.raises(ValueError):
            FIntegral(-1)
