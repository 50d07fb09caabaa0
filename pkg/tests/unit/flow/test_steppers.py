"""Unit tests for the parametric and radial-graph steppers"""

import math

import numpy as np
import pytest

from src.exceptions import ParameterError
from src.flow import (
    FlowConfig,
    FlowHalted,
    FlowState,
    HaltReason,
    effective_h,
    global_term,
    resolve_thresholds,
    step_graph,
    step_parametric,
)
from tests.fixtures.curves import perturbed_circle, pole_circle


def initial_state(surface, curve, config):
    h = global_term(surface, curve, config.alpha)
    if hasattr(curve, "area"):
        length, area = curve.length, curve.area
    else:
        length, area = float(np.sum(curve.ds)), float(np.sum(surface.area_primitive(curve.r)) * curve.du)
    return FlowState(t=0.0, curve=curve, h=h, reference_area=area, reference_length=length)


@pytest.mark.unit
class TestStepParametric:
    """Tests for the explicit RK4 step"""

    def test_circle_is_stationary(self, constant_surface):
        """Test h − κ = 0 leaves a geodesic circle in place"""
        curve = pole_circle(constant_surface, 1.0, n=64)
        config = resolve_thresholds(constant_surface, curve, FlowConfig(dt_policy="fixed", dt=1e-3))
        state = step_parametric(constant_surface, initial_state(constant_surface, curve, config), config)
        np.testing.assert_allclose(state.curve.r, 1.0, atol=1e-12)
        assert state.step == 1
        assert state.t == pytest.approx(1e-3)
        assert state.dt_used == 1e-3
        assert state.h == pytest.approx(1.0 / math.tanh(1.0))

    def test_perturbation_decays(self, constant_surface):
        """Test a mode-2 perturbation shrinks under the area-preserving flow"""
        curve = perturbed_circle(constant_surface, 1.0, 2, 0.05, n=64).to_curve()
        config = resolve_thresholds(constant_surface, curve, FlowConfig(dt_policy="fixed", dt=2e-4))
        state = initial_state(constant_surface, curve, config)
        for _ in range(20):
            state = step_parametric(constant_surface, state, config)
        spread = float(np.ptp(state.curve.r))
        assert spread < 0.1
        assert state.curve.area == pytest.approx(curve.area, rel=1e-7)

    def test_redistribution_stride(self, constant_surface):
        """Test redistribution keeps the first sample and the point count"""
        curve = perturbed_circle(constant_surface, 1.0, 2, 0.05, n=64).to_curve()
        config = resolve_thresholds(constant_surface, curve,
                                    FlowConfig(dt_policy="fixed", dt=2e-4, redistribution_stride=1))
        state = step_parametric(constant_surface, initial_state(constant_surface, curve, config), config)
        assert state.curve.n == 64
        ds = state.curve.ds
        assert float(np.ptp(ds) / np.mean(ds)) < 1e-3

    def test_requires_parametric_state(self, constant_surface):
        """Test graphs are rejected"""
        graph = perturbed_circle(constant_surface, n=64)
        config = resolve_thresholds(constant_surface, graph, FlowConfig())
        with pytest.raises(ParameterError):
            step_parametric(constant_surface, FlowState(t=0.0, curve=graph), config)

    def test_invalid_time_step(self, constant_surface):
        """Test dt must be positive"""
        curve = pole_circle(constant_surface, 1.0, n=32)
        config = resolve_thresholds(constant_surface, curve, FlowConfig())
        with pytest.raises(ParameterError):
            step_parametric(constant_surface, FlowState(t=0.0, curve=curve), config, dt=-1.0)

    def test_halt_keeps_last_state(self, constant_surface):
        """Test FlowHalted carries the state before the failed step"""
        curve = pole_circle(constant_surface, 1.0, n=32)
        config = FlowConfig(dt_policy="fixed", dt=1e-3).with_thresholds(kappa_ceiling=0.5, escape_radius=10.0)
        state = initial_state(constant_surface, curve, config)
        with pytest.raises(FlowHalted) as info:
            step_parametric(constant_surface, state, config)
        assert info.value.reason == HaltReason.BLOW_UP
        assert info.value.state is state


@pytest.mark.unit
class TestStepGraph:
    """Tests for the semi-implicit graph step"""

    def test_circle_is_stationary(self, tanh_surface):
        """Test a pole circle is a fixed point"""
        graph = perturbed_circle(tanh_surface, 1.0, 2, 0.0, n=64)
        config = resolve_thresholds(tanh_surface, graph, FlowConfig(scheme="semi-implicit-graph",
                                                                    dt_policy="fixed", dt=1e-2))
        state = step_graph(tanh_surface, initial_state(tanh_surface, graph, config), config)
        np.testing.assert_allclose(state.curve.r, 1.0, atol=1e-12)

    def test_mode_amplitude_decays(self, constant_surface):
        """Test the mode-3 amplitude shrinks at about the linearized rate"""
        graph = perturbed_circle(constant_surface, 1.0, 3, 1e-3, n=128)
        config = resolve_thresholds(constant_surface, graph, FlowConfig(scheme="semi-implicit-graph",
                                                                        dt_policy="fixed", dt=1e-3))
        state = initial_state(constant_surface, graph, config)
        for _ in range(100):
            state = step_graph(constant_surface, state, config)
        ratio = state.curve.mode_amplitude(3) / 1e-3
        expected = math.exp(-8.0 / math.sinh(1.0) ** 2 * 0.1)
        assert ratio == pytest.approx(expected, rel=0.05)

    def test_requires_graph_state(self, constant_surface):
        """Test parametric curves are rejected"""
        curve = pole_circle(constant_surface, 1.0, n=32)
        config = resolve_thresholds(constant_surface, curve, FlowConfig(scheme="semi-implicit-graph"))
        with pytest.raises(ParameterError):
            step_graph(constant_surface, FlowState(t=0.0, curve=curve), config)


@pytest.mark.unit
class TestFeedback:
    """Tests for the drift-feedback correction of h"""

    def test_zero_gain_is_identity(self, constant_surface):
        """Test no correction without gain"""
        curve = pole_circle(constant_surface, 1.0, n=32)
        state = initial_state(constant_surface, curve, FlowConfig())
        assert effective_h(constant_surface, state, curve, FlowConfig(), 1.25) == 1.25

    def test_area_feedback_sign(self, constant_surface):
        """Test excess area raises the inward speed (smaller h)"""
        curve = pole_circle(constant_surface, 1.0, n=32)
        state = initial_state(constant_surface, curve, FlowConfig())
        state.reference_area = curve.area - 0.1
        config = FlowConfig(feedback_gain=1.0)
        corrected = effective_h(constant_surface, state, curve, config, 1.0)
        assert corrected == pytest.approx(1.0 - 0.1 / curve.length)

    def test_length_feedback(self, constant_surface):
        """Test the α = 1 correction divides by ∮κ ds"""
        curve = pole_circle(constant_surface, 1.0, n=32)
        state = initial_state(constant_surface, curve, FlowConfig(alpha=1.0))
        state.reference_length = curve.length - 0.2
        config = FlowConfig(alpha=1.0, feedback_gain=2.0, feedback_time_scale=4.0)
        total = float(np.sum(curve.kappa * curve.ds))
        assert effective_h(constant_surface, state, curve, config, 1.0) == pytest.approx(1.0 - 0.5 * 0.2 / total)

    def test_generic_alpha_ignores_feedback(self, constant_surface):
        """Test α outside {0, 1} is not corrected"""
        curve = pole_circle(constant_surface, 1.0, n=32)
        state = initial_state(constant_surface, curve, FlowConfig(alpha=0.5))
        state.reference_area = 0.0
        assert effective_h(constant_surface, state, curve, FlowConfig(alpha=0.5, feedback_gain=1.0), 1.0) == 1.0
