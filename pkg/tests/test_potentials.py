import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from falsevac.errors import PreconditionError
from falsevac.potentials import (DrivenSineGordon, QuarticDoubleWell, TaylorQuartic, deriv,
                                 evaluate, find_minima, gap_to_stiffness, local_minima,
                                 taylor_coefficients)


def central_diff(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2 * h)


quartic_specs = st.builds(QuarticDoubleWell,
                          lam=st.floats(0.1, 5.0), a=st.floats(0.2, 2.0),
                          tilt=st.floats(0.0, 0.5))
sg_specs = st.builds(DrivenSineGordon,
                     c_a=st.floats(0.1, 3.0), c_b=st.floats(0.0, 0.5),
                     phi_c=st.floats(-3.0, 3.0), tilt=st.floats(0.0, 0.5))
taylor_specs = st.builds(TaylorQuartic, phi0=st.floats(-2.0, 2.0),
                         c0=st.floats(0.0, 3.0), c1=st.floats(-1.0, 1.0))
any_spec = st.one_of(quartic_specs, sg_specs, taylor_specs)


class TestEvaluate:
    def test_quartic_vacuum_zero(self):
        assert evaluate(QuarticDoubleWell(2, 1), 1.0) == 0.0

    def test_sine_gordon_origin(self):
        assert evaluate(DrivenSineGordon(1), 0.0) == 0.0

    def test_quartic_barrier(self):
        assert evaluate(QuarticDoubleWell(2, 1), 0.0) == pytest.approx(0.5, abs=1e-15)

    def test_sine_gordon_matches_cosine_form(self):
        spec = DrivenSineGordon(1.3, 0.2, 0.7, 0.05)
        phi = np.linspace(-7, 7, 101)
        direct = 1.3 * (1 - np.cos(phi)) + 0.2 * (phi - 0.7) ** 2 - 0.05 * phi
        np.testing.assert_allclose(evaluate(spec, phi), direct, rtol=0, atol=1e-14)

    def test_invalid_parameters(self):
        with pytest.raises(PreconditionError):
            QuarticDoubleWell(0, 1)
        with pytest.raises(PreconditionError):
            QuarticDoubleWell(1, 1, tilt=-0.1)
        with pytest.raises(PreconditionError):
            DrivenSineGordon(0)
        with pytest.raises(PreconditionError):
            TaylorQuartic(0, -1, 0)


class TestDeriv:
    def test_quartic_stationary_vacuum(self):
        assert deriv(QuarticDoubleWell(2, 1), 1.0, 1) == 0.0

    def test_sine_gordon_curvature_at_barrier_top(self):
        # d^2/dphi^2 (1 - cos phi) = cos phi, so -1 at phi = pi
        spec = DrivenSineGordon(1)
        assert deriv(spec, math.pi, 2) == pytest.approx(-1.0, abs=1e-15)
        fd = (evaluate(spec, math.pi + 1e-4) - 2 * evaluate(spec, math.pi)
              + evaluate(spec, math.pi - 1e-4)) / 1e-8
        assert fd == pytest.approx(-1.0, abs=1e-6)

    def test_tilted_slope_at_origin(self):
        spec = QuarticDoubleWell(2, 1, 0.1)
        fd = central_diff(lambda p: evaluate(spec, p), 0.0)
        assert fd == pytest.approx(-0.1, abs=1e-8)
        assert deriv(spec, 0.0, 1) == pytest.approx(fd, abs=1e-8)

    def test_unsupported_order(self):
        with pytest.raises(PreconditionError):
            deriv(QuarticDoubleWell(2, 1), 0.0, 5)
        with pytest.raises(PreconditionError):
            deriv(QuarticDoubleWell(2, 1), 0.0, 0)

    @settings(max_examples=200, deadline=None)
    @given(spec=any_spec, phi=st.floats(-10, 10))
    def test_first_derivative_matches_finite_differences(self, spec, phi):
        fd = central_diff(lambda p: evaluate(spec, p), phi)
        exact = deriv(spec, phi, 1)
        assert exact == pytest.approx(fd, rel=1e-6, abs=1e-6)

    @settings(max_examples=100, deadline=None)
    @given(spec=any_spec, phi=st.floats(-5, 5), order=st.integers(2, 4))
    def test_higher_derivatives_chain(self, spec, phi, order):
        fd = central_diff(lambda p: deriv(spec, p, order - 1), phi)
        assert deriv(spec, phi, order) == pytest.approx(fd, rel=1e-6, abs=1e-5)


class TestFindMinima:
    def test_sine_gordon_small_tilt(self):
        vac = find_minima(DrivenSineGordon(1, 0, 0, 0.01), (-1, 7))
        assert abs(vac.phi_true - 2 * math.pi) < 0.05
        assert abs(vac.phi_false) < 0.05
        # Newton-independent check: sin(phi) = 0.01 on each branch
        assert vac.phi_false == pytest.approx(math.asin(0.01), abs=1e-12)
        assert vac.phi_true == pytest.approx(2 * math.pi + math.asin(0.01), abs=1e-12)
        assert vac.gap > 0

    def test_symmetric_quartic_tie(self):
        vac = find_minima(QuarticDoubleWell(2, 1), (-2, 2))
        assert vac.phi_false == pytest.approx(-1.0, abs=1e-12)
        assert vac.phi_true == pytest.approx(1.0, abs=1e-12)
        assert vac.gap == 0.0

    def test_tilted_quartic_against_dense_scan(self):
        spec = QuarticDoubleWell(2, 1, 0.05)
        vac = find_minima(spec, (-2, 2))
        # oracle: dense scan for the two basins, then golden-section polish
        xs = np.linspace(-2, 2, 10_001)
        vs = evaluate(spec, xs)

        def polish(lo, hi):
            g = (math.sqrt(5) - 1) / 2
            for _ in range(200):
                c, d = hi - g * (hi - lo), lo + g * (hi - lo)
                if evaluate(spec, c) < evaluate(spec, d):
                    hi = d
                else:
                    lo = c
            return 0.5 * (lo + hi)

        left = polish(xs[np.argmin(np.where(xs < 0, vs, np.inf))] - 1e-3,
                      xs[np.argmin(np.where(xs < 0, vs, np.inf))] + 1e-3)
        right = polish(xs[np.argmin(np.where(xs > 0, vs, np.inf))] - 1e-3,
                       xs[np.argmin(np.where(xs > 0, vs, np.inf))] + 1e-3)
        assert vac.phi_true == pytest.approx(right, abs=1e-7)
        assert vac.phi_false == pytest.approx(left, abs=1e-7)
        assert vac.gap == pytest.approx(evaluate(spec, left) - evaluate(spec, right), abs=1e-12)
        assert vac.gap > 0 and vac.phi_true > 0

    def test_single_well_rejected(self):
        with pytest.raises(PreconditionError):
            find_minima(TaylorQuartic(0, 1, 2), (-3, 3))

    def test_minima_are_stationary_and_convex(self):
        for spec in (QuarticDoubleWell(2, 1, 0.1), DrivenSineGordon(1, 0.01, 2 * math.pi, 0.05),
                     DrivenSineGordon(2.0, 0, 0, 0.3)):
            vac = find_minima(spec, (-1, 7) if isinstance(spec, DrivenSineGordon) else (-2, 2))
            for phi in (vac.phi_false, vac.phi_true):
                assert abs(deriv(spec, phi, 1)) <= 1e-10
                assert deriv(spec, phi, 2) > 0
            assert vac.v_false >= vac.v_true

    def test_local_minima_sorted(self):
        mins = local_minima(DrivenSineGordon(1, 0, 0, 0.01), (-7, 14))
        assert mins == sorted(mins)
        assert len(mins) == 4  # -2pi, 0, 2pi, 4pi branches

    def test_false_vacuum_monotone_in_tilt(self):
        tilts = np.linspace(0.005, 0.2, 40)
        phis = [find_minima(DrivenSineGordon(1, 0, 0, e), (-1, 7)).phi_false for e in tilts]
        assert np.all(np.diff(phis) > 0)
        assert phis[0] < 0.0051
        # leading order phi_F ~ tilt
        assert phis[0] / tilts[0] == pytest.approx(1.0, rel=1e-4)

    def test_gap_zero_then_increasing(self):
        assert find_minima(QuarticDoubleWell(2, 1, 0.0), (-2, 2)).gap == 0.0
        gaps = [find_minima(QuarticDoubleWell(2, 1, e), (-2, 2)).gap
                for e in np.arange(1, 11) * 0.01]
        assert np.all(np.diff(gaps) > 0)


class TestTaylor:
    def test_self_expansion(self):
        assert taylor_coefficients(TaylorQuartic(0, 1, 2), 0.0) == pytest.approx((0, 0, 1, 0, 2))

    def test_quartic_curvature_at_vacuum(self):
        spec = QuarticDoubleWell(2, 1)
        c = taylor_coefficients(spec, 1.0)
        fd2 = (evaluate(spec, 1 + 1e-4) - 2 * evaluate(spec, 1.0) + evaluate(spec, 1 - 1e-4)) / 1e-8
        assert fd2 == pytest.approx(4.0, abs=1e-6)
        assert c[2] == pytest.approx(2.0, abs=1e-15)

    def test_sine_gordon_origin(self):
        spec = DrivenSineGordon(1)
        c = taylor_coefficients(spec, 0.0)
        fd2 = (evaluate(spec, 1e-4) - 2 * evaluate(spec, 0.0) + evaluate(spec, -1e-4)) / 1e-8
        assert c[2] == pytest.approx(0.5, abs=1e-15)
        assert fd2 / 2 == pytest.approx(0.5, abs=1e-6)
        assert c[4] == pytest.approx(-1 / 24, abs=1e-15)

    @given(spec=any_spec, phi0=st.floats(-3, 3), dphi=st.floats(-1e-2, 1e-2))
    def test_series_reproduces_value_locally(self, spec, phi0, dphi):
        c = taylor_coefficients(spec, phi0)
        series = sum(ck * dphi**k for k, ck in enumerate(c))
        assert series == pytest.approx(evaluate(spec, phi0 + dphi), abs=1e-9)


class TestStiffness:
    @pytest.mark.parametrize("gap, alpha", [(1.0, 1.0), (0.25, 4.0)])
    def test_reciprocal(self, gap, alpha):
        assert gap_to_stiffness(gap) == alpha

    @pytest.mark.parametrize("gap", [0.0, -1.0])
    def test_rejects_nonpositive(self, gap):
        with pytest.raises(PreconditionError):
            gap_to_stiffness(gap)


@given(phi=st.floats(-10, 10), phi0=st.floats(-10, 10))
def test_quartic_identity(phi, phi0):
    lhs = (phi - phi0) ** 4
    rhs = (phi**2 - phi0**2) ** 2 - 4 * phi * phi0 * (phi - phi0) ** 2
    scale = max(1.0, (abs(phi) + abs(phi0)) ** 4)
    assert abs(lhs - rhs) <= 64 * np.finfo(float).eps * scale
