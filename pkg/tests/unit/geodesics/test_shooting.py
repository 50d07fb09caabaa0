"""Unit tests for geodesic integration and Jacobi-field curvatures"""

import math

import numpy as np
import pytest

from src.exceptions import GeodesicRangeError, ParameterError
from src.geodesics import POLE, ChartPoint, distance, jacobi_curvatures, shoot


@pytest.mark.unit
class TestShoot:
    """Tests for the geodesic initial-value problem"""

    def test_radial_ray_from_pole(self, tanh_surface):
        """Test rays from the pole are meridians"""
        arc = shoot(tanh_surface, POLE, 0.8, 1.5, 0.1)
        assert arc.end == ChartPoint(1.5, 0.8)
        np.testing.assert_allclose(arc.r, arc.arclength)

    def test_outward_meridian(self, constant_surface):
        """Test a radial launch stays on its meridian"""
        arc = shoot(constant_surface, ChartPoint(1.0, 0.3), 0.0, 0.5, 0.05)
        assert arc.end.r == pytest.approx(1.5, abs=1e-9)
        assert arc.end.u == pytest.approx(0.3, abs=1e-9)

    def test_unit_speed_and_clairaut(self, tanh_surface):
        """Test |γ'| = 1 and φ²u' is conserved"""
        arc = shoot(tanh_surface, ChartPoint(1.0, 0.0), 1.2, 3.0, 0.05)
        phi = tanh_surface.phi(arc.r)
        np.testing.assert_allclose(arc.speed(phi), 1.0, atol=1e-8)
        clairaut = arc.clairaut(phi)
        np.testing.assert_allclose(clairaut, clairaut[0], atol=1e-8)

    def test_shot_length_matches_distance(self, constant_surface):
        """Test short geodesic segments are minimizing"""
        start = ChartPoint(1.0, 0.0)
        arc = shoot(constant_surface, start, 2.0, 0.7, 0.05)
        assert distance(constant_surface, start, arc.end) == pytest.approx(0.7, rel=1e-6)

    def test_through_pole(self, constant_surface):
        """Test an inward meridian crosses the pole"""
        arc = shoot(constant_surface, ChartPoint(0.5, 0.0), math.pi, 1.0, 0.05)
        assert arc.end.r == pytest.approx(0.5, abs=1e-8)
        assert math.cos(arc.end.u) == pytest.approx(-1.0, abs=1e-8)

    def test_leaving_annulus(self, rational_surface):
        """Test GeodesicRangeError carries the exit arclength"""
        with pytest.raises(GeodesicRangeError) as info:
            shoot(rational_surface, ChartPoint(11.0, 0.0), 0.0, 5.0, 0.1)
        assert info.value.exit_arclength == pytest.approx(1.0, abs=1e-6)

    def test_invalid_length(self, constant_surface):
        """Test non-positive lengths and steps are rejected"""
        with pytest.raises(ParameterError):
            shoot(constant_surface, POLE, 0.0, 0.0, 0.1)
        with pytest.raises(ParameterError):
            shoot(constant_surface, POLE, 0.0, 1.0, 0.0)


@pytest.mark.unit
class TestJacobiCurvatures:
    """Tests for geodesic-circle curvature about arbitrary centers"""

    def test_about_pole(self, tanh_surface):
        """Test κ° = φ'/φ about the pole"""
        r = np.array([0.5, 1.0, 2.0])
        kappa, dist = jacobi_curvatures(tanh_surface, POLE, r, np.zeros(3))
        np.testing.assert_allclose(kappa, tanh_surface.dphi(r) / tanh_surface.phi(r))
        np.testing.assert_allclose(dist, r)

    def test_constant_curvature_is_coth(self, constant_surface):
        """Test κ° = coth(dist) in curvature −1 about any center"""
        kappa, dist = jacobi_curvatures(constant_surface, ChartPoint(0.5, 0.0), [1.0, 1.5], [1.0, 2.0])
        np.testing.assert_allclose(kappa, 1.0 / np.tanh(dist), rtol=1e-6)

    def test_pinched_bounds(self, tanh_surface):
        """Test coth(d) ≤ κ° ≤ 2 coth(2d) on the tanh surface"""
        kappa, dist = jacobi_curvatures(tanh_surface, ChartPoint(0.7, 0.0), [1.2, 2.0], [2.0, 4.0])
        assert np.all(kappa >= 1.0 / np.tanh(dist) - 1e-7)
        assert np.all(kappa <= 2.0 / np.tanh(2.0 * dist) + 1e-7)
