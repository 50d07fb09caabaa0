"""Unit tests for point-to-point distances and radial gradients"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import DomainError, ParameterError
from src.geodesics import (
    POLE,
    ChartPoint,
    distance,
    location_from_dict,
    location_from_xy,
    radial_gradient,
    solve_geodesics,
    wrap_angle,
)

radii = st.floats(min_value=0.2, max_value=3.0)
angles = st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True)


def hyperbolic_distance(p: ChartPoint, q: ChartPoint) -> float:
    """Law of cosines in curvature −1"""
    value = (math.cosh(p.r) * math.cosh(q.r)
             - math.sinh(p.r) * math.sinh(q.r) * math.cos(q.u - p.u))
    return math.acosh(max(value, 1.0))


@pytest.mark.unit
class TestLocations:
    """Tests for chart points and the pole"""

    def test_chart_point_normalizes_angle(self):
        """Test angles are reduced to [0, 2π)"""
        point = ChartPoint(1.0, -math.pi / 2)
        assert point.u == pytest.approx(1.5 * math.pi)

    def test_chart_point_rejects_pole(self):
        """Test r = 0 must be expressed as POLE"""
        with pytest.raises(ParameterError):
            ChartPoint(0.0, 0.0)

    def test_location_round_trip(self):
        """Test to_dict / location_from_dict for both kinds"""
        assert location_from_dict(POLE.to_dict()) is POLE
        point = ChartPoint(1.25, 0.5)
        assert location_from_dict(point.to_dict()) == point

    def test_location_from_xy_floor(self):
        """Test tiny chart radii collapse to the pole"""
        assert location_from_xy(1e-14, 0.0) is POLE
        assert location_from_xy(0.0, 2.0) == ChartPoint(2.0, math.pi / 2)

    def test_wrap_angle(self):
        """Test angle differences land in (−π, π]"""
        np.testing.assert_allclose(wrap_angle([2.5 * math.pi, -math.pi, 0.5]), [0.5 * math.pi, math.pi, 0.5])


@pytest.mark.unit
class TestDistance:
    """Tests for the minimizing-geodesic distance"""

    def test_pole_distance_is_radius(self, tanh_surface):
        """Test dist(o, (r, u)) = r"""
        assert distance(tanh_surface, POLE, ChartPoint(1.5, 0.3)) == 1.5
        assert distance(tanh_surface, ChartPoint(2.5, 4.0), POLE) == 2.5
        assert distance(tanh_surface, POLE, POLE) == 0.0

    def test_same_meridian(self, constant_surface):
        """Test points on one meridian are r-apart"""
        assert distance(constant_surface, ChartPoint(1.0, 0.2), ChartPoint(2.0, 0.2)) == pytest.approx(1.0)

    def test_antipodal_points_pass_through_pole(self, constant_surface):
        """Test (1, 0) and (1, π) are 2 apart"""
        assert distance(constant_surface, ChartPoint(1.0, 0.0), ChartPoint(1.0, math.pi)) == pytest.approx(2.0)

    @pytest.mark.parametrize("p,q", [
        (ChartPoint(1.0, 0.0), ChartPoint(1.5, 1.0)),
        (ChartPoint(0.3, 2.0), ChartPoint(2.0, 0.1)),
        (ChartPoint(2.0, 0.0), ChartPoint(2.0, 3.0)),
    ])
    def test_matches_law_of_cosines(self, constant_surface, p, q):
        """Test agreement with the hyperbolic law of cosines"""
        assert distance(constant_surface, p, q) == pytest.approx(hyperbolic_distance(p, q), rel=1e-7)

    def test_vectorized_targets(self, constant_surface):
        """Test solve_geodesics over many targets at once"""
        p = ChartPoint(1.0, 0.5)
        target_r = np.array([0.5, 1.0, 2.0, 2.5])
        target_u = np.array([0.0, 2.0, 4.0, 0.5])
        solution = solve_geodesics(constant_surface, p, target_r, target_u)
        expected = [hyperbolic_distance(p, ChartPoint(r, u)) for r, u in zip(target_r, target_u)]
        np.testing.assert_allclose(solution.distance, expected, rtol=1e-7)

    def test_target_outside_annulus(self, constant_surface):
        """Test targets beyond r_max are a domain error"""
        with pytest.raises(DomainError):
            solve_geodesics(constant_surface, ChartPoint(1.0, 0.0), [constant_surface.r_max + 1.0], [0.0])

    @settings(max_examples=25, deadline=None)
    @given(r1=radii, u1=angles, r2=radii, u2=angles)
    def test_symmetry(self, tanh_surface, r1, u1, r2, u2):
        """Test dist(p, q) = dist(q, p)"""
        p, q = ChartPoint(r1, u1), ChartPoint(r2, u2)
        assert distance(tanh_surface, p, q) == pytest.approx(distance(tanh_surface, q, p), rel=1e-7, abs=1e-9)

    @settings(max_examples=20, deadline=None)
    @given(r1=radii, u1=angles, r2=radii, u2=angles, r3=radii, u3=angles)
    def test_triangle_inequality(self, tanh_surface, r1, u1, r2, u2, r3, u3):
        """Test dist(p, r) ≤ dist(p, q) + dist(q, r)"""
        p, q, s = ChartPoint(r1, u1), ChartPoint(r2, u2), ChartPoint(r3, u3)
        direct = distance(tanh_surface, p, s)
        detour = distance(tanh_surface, p, q) + distance(tanh_surface, q, s)
        assert direct <= detour + 1e-8

    def test_pinched_distance_between_models(self, tanh_surface, constant_surface):
        """Test more negative curvature spreads points further apart"""
        p, q = ChartPoint(1.5, 0.0), ChartPoint(1.5, 1.5)
        assert distance(tanh_surface, p, q) >= distance(constant_surface, p, q) - 1e-9


@pytest.mark.unit
class TestRadialGradient:
    """Tests for ∂r = ∇dist(p0, ·)"""

    def test_gradient_from_pole_is_radial(self, tanh_surface):
        """Test ∂r about the pole is (1, 0)"""
        dr, du = radial_gradient(tanh_surface, POLE, ChartPoint(1.2, 0.7))
        assert dr == pytest.approx(1.0)
        assert du == pytest.approx(0.0)

    def test_gradient_is_unit(self, constant_surface):
        """Test the gradient has unit length in the metric"""
        x = ChartPoint(1.5, 1.0)
        dr, du = radial_gradient(constant_surface, ChartPoint(1.0, 0.0), x)
        phi = math.sinh(x.r)
        assert dr * dr + (phi * du) ** 2 == pytest.approx(1.0, rel=1e-8)

    def test_gradient_points_away(self, constant_surface):
        """Test moving along ∂r increases the distance"""
        p0, x = ChartPoint(1.0, 0.0), ChartPoint(1.5, 1.0)
        dr, du = radial_gradient(constant_surface, p0, x)
        h = 1e-3
        ahead = distance(constant_surface, p0, ChartPoint(x.r + h * dr, x.u + h * du))
        behind = distance(constant_surface, p0, ChartPoint(x.r - h * dr, x.u - h * du))
        assert (ahead - behind) / (2 * h) == pytest.approx(1.0, rel=1e-4)

    def test_gradient_undefined_at_base_point(self, constant_surface):
        """Test ∂r is undefined at p0 itself and at the pole"""
        x = ChartPoint(1.0, 0.0)
        with pytest.raises(DomainError):
            radial_gradient(constant_surface, x, x)
        with pytest.raises(DomainError):
            radial_gradient(constant_surface, x, POLE)
