"""Unit tests for the nonlocal term h and the μ-weighted average"""

import math

import numpy as np
import pytest

from src.curve import initial_curve
from src.exceptions import DomainError, ParameterError
from src.flow import global_term, mu_weighted_average
from tests.fixtures.curves import chart_ellipse, perturbed_circle, pole_circle


@pytest.mark.unit
class TestGlobalTerm:
    """Tests for h = ∮κ^{1+α} ds / ∮κ^α ds"""

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0])
    def test_circle_gives_coth(self, constant_surface, alpha):
        """Test h = κ° on a geodesic circle for every α"""
        curve = pole_circle(constant_surface, 1.0)
        assert global_term(constant_surface, curve, alpha) == pytest.approx(1.0 / math.tanh(1.0), rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 1.5])
    def test_weighted_normal_speed_vanishes(self, tanh_surface, alpha):
        """Test ∮(h − κ)κ^α ds = 0 with the same quadrature weights"""
        curve = perturbed_circle(tanh_surface, 1.0, 3, 0.05, n=128).to_curve()
        h = global_term(tanh_surface, curve, alpha)
        weight = curve.kappa ** alpha
        residual = float(np.sum((h - curve.kappa) * weight * curve.ds))
        assert abs(residual) < 1e-12 * float(np.sum(curve.kappa * weight * curve.ds))

    def test_graph_and_curve_agree(self, constant_surface):
        """Test graphs use their own κ and ds"""
        graph = perturbed_circle(constant_surface, 1.0, 2, 0.05, n=64)
        assert global_term(constant_surface, graph, 1.0) == pytest.approx(
            global_term(constant_surface, graph.to_curve(), 1.0), rel=1e-12)

    def test_non_convex_fractional_alpha(self, constant_surface):
        """Test κ^α with κ ≤ 0 and non-integer α is a domain error"""
        graph = initial_curve(constant_surface, "perturbed_circle", {"radius": 1.0, "mode": 5, "amplitude": 0.3}, 128)
        with pytest.raises(DomainError):
            global_term(constant_surface, graph, 0.5)
        assert math.isfinite(global_term(constant_surface, graph, 0.0))
        assert math.isfinite(global_term(constant_surface, graph, 2.0))

    def test_invalid_alpha(self, constant_surface):
        """Test negative α is rejected"""
        with pytest.raises(ParameterError):
            global_term(constant_surface, pole_circle(constant_surface, 1.0), -1.0)

    def test_curve_on_other_surface(self, constant_surface, tanh_surface):
        """Test the curve must be sampled on the given surface"""
        with pytest.raises(ParameterError):
            global_term(tanh_surface, pole_circle(constant_surface, 1.0), 0.0)


@pytest.mark.unit
class TestMuWeightedAverage:
    """Tests for the graph-volume weighted curvature average"""

    def test_circle(self, tanh_surface):
        """Test the average equals κ° on a pole circle"""
        curve = pole_circle(tanh_surface, 1.0)
        expected = float(tanh_surface.dphi(1.0) / tanh_surface.phi(1.0))
        assert mu_weighted_average(tanh_surface, curve) == pytest.approx(expected, rel=1e-12)

    def test_graph_and_curve_agree(self, constant_surface):
        """Test the graph and parametric weights coincide"""
        graph = perturbed_circle(constant_surface, 1.0, 2, 0.1, n=128)
        assert mu_weighted_average(constant_surface, graph) == pytest.approx(
            mu_weighted_average(constant_surface, graph.to_curve()), rel=1e-12)

    def test_clockwise_curve(self, constant_surface):
        """Test a clockwise graph gives the same average"""
        curve = perturbed_circle(constant_surface, 1.0, 2, 0.1, n=128).to_curve()
        assert mu_weighted_average(constant_surface, curve.reversed()) == pytest.approx(
            mu_weighted_average(constant_surface, curve), rel=1e-10)

    def test_curve_not_around_pole(self, constant_surface):
        """Test curves not winding about the pole are not graphs"""
        curve = chart_ellipse(constant_surface, semi_axes=(0.5, 0.3), center=(3.0, 0.0), n=64)
        with pytest.raises(ParameterError):
            mu_weighted_average(constant_surface, curve)
