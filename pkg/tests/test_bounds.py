"""Closed-form eigenvalue bounds against direct evaluation oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_spectra.bounds import (
    dirac_1d_lambda1,
    nu1,
    quad_bound,
    quad_bound_simple,
    rect_bounds,
)
from dirac_spectra.errors import DomainError, InvalidIsoperimetricDataError


class TestNu1:
    def test_zero_mass_is_exactly_half_pi(self):
        assert nu1(0.0) == math.pi / 2.0

    def test_unit_mass_root(self):
        # independent check: the root of tan(nu) = -nu
        root = nu1(1.0)
        assert root == pytest.approx(2.028757838110434, abs=1e-12)
        assert math.tan(root) + root == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("m", [0.1, 1.0, 10.0])
    def test_defining_equation_residual(self, m):
        root = nu1(m)
        assert math.tan(root) / root + 1.0 / m == pytest.approx(0.0, abs=1e-10)

    def test_large_mass_limit_is_pi(self):
        assert nu1(1e6) == pytest.approx(math.pi, abs=1e-3)

    def test_strictly_increasing(self):
        grid = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0]
        vals = [nu1(m) for m in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_range(self):
        for m in [0.0, 0.3, 3.0, 50.0]:
            assert math.pi / 2.0 <= nu1(m) < math.pi

    def test_negative_mass_rejected(self):
        with pytest.raises(DomainError):
            nu1(-1.0)


class TestRectBounds:
    def test_unit_square_zero_mass_closed_forms(self):
        bd = rect_bounds(1.0, 1.0, 0.0)
        assert bd.lower_sq == pytest.approx(math.pi**2 / 2.0, rel=1e-12)
        assert bd.upper_refined_sq == pytest.approx(5.0 * math.pi**2 / 4.0, rel=1e-12)
        assert bd.upper_simple_sq == pytest.approx(2.0 * math.pi**2, rel=1e-12)

    @given(
        st.floats(0.1, 10.0),
        st.floats(0.1, 10.0),
        st.floats(0.0, 10.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_symmetry_in_sides(self, a, b, m):
        x = rect_bounds(a, b, m)
        y = rect_bounds(b, a, m)
        assert x.lower_sq == pytest.approx(y.lower_sq, rel=1e-12)
        assert x.upper_simple_sq == pytest.approx(y.upper_simple_sq, rel=1e-12)
        assert x.upper_refined_sq == pytest.approx(y.upper_refined_sq, rel=1e-12)

    def test_ordering_invariant_random_sample(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            a, b = rng.uniform(0.1, 10.0, size=2)
            m = rng.uniform(0.0, 10.0)
            bd = rect_bounds(a, b, m)
            assert bd.lower_sq <= bd.upper_refined_sq + 1e-12
            assert bd.upper_refined_sq <= bd.upper_simple_sq + 1e-12

    def test_large_mass_merges_bounds(self):
        a, b = 1.3, 0.6
        bd = rect_bounds(a, b, 1e6)
        simple = (math.pi / a) ** 2 + (math.pi / b) ** 2
        assert bd.upper_refined_sq == pytest.approx(simple, rel=1e-4)
        assert bd.lower_sq == pytest.approx(simple, rel=1e-4)

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            rect_bounds(0.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            rect_bounds(1.0, 1.0, -0.5)


class TestDirac1D:
    def test_zero_mass_values(self):
        assert dirac_1d_lambda1(1.0, 0.0) == pytest.approx(math.pi / 2.0, rel=1e-12)
        assert dirac_1d_lambda1(2.0, 0.0) == pytest.approx(math.pi / 4.0, rel=1e-12)

    def test_unit_mass_value(self):
        expected = math.sqrt(1.0 + nu1(1.0) ** 2)
        assert dirac_1d_lambda1(1.0, 1.0) == pytest.approx(expected, rel=1e-12)
        assert dirac_1d_lambda1(1.0, 1.0) == pytest.approx(2.2618263, abs=1e-6)

    def test_invalid_length(self):
        with pytest.raises(DomainError):
            dirac_1d_lambda1(0.0, 1.0)


class TestQuadBound:
    @pytest.mark.parametrize("m", [0.0, 1.0, 5.0])
    def test_square_case(self, m):
        assert quad_bound(1.0, 4.0, m) == pytest.approx(
            rect_bounds(1.0, 1.0, m).upper_refined_sq, rel=1e-12
        )
        assert quad_bound_simple(1.0, 4.0, m) == pytest.approx(
            rect_bounds(1.0, 1.0, m).upper_simple_sq, rel=1e-12
        )

    @pytest.mark.parametrize("m", [0.0, 2.0])
    def test_matching_rectangle(self, m):
        # A=1, P=5 factors as a=2, b=0.5
        assert quad_bound(1.0, 5.0, m) == pytest.approx(
            rect_bounds(2.0, 0.5, m).upper_refined_sq, rel=1e-12
        )

    def test_isoperimetric_violation_rejected(self):
        with pytest.raises(InvalidIsoperimetricDataError):
            quad_bound(1.0, 3.0, 0.0)
        with pytest.raises(InvalidIsoperimetricDataError):
            quad_bound_simple(1.0, 3.0, 0.0)

    def test_nonpositive_area_rejected(self):
        with pytest.raises(DomainError):
            quad_bound(0.0, 4.0, 1.0)
