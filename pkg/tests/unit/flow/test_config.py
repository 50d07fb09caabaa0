"""Unit tests for flow configuration, halt reasons and thresholds"""

import math

import pytest

from src.exceptions import ParameterError
from src.flow import (
    HALT_PRIORITY,
    DtPolicy,
    FlowConfig,
    FlowHalted,
    FlowState,
    HaltReason,
    Scheme,
    check_halt,
    resolve_thresholds,
    time_step,
)
from tests.fixtures.curves import perturbed_circle, pole_circle


@pytest.mark.unit
class TestFlowConfig:
    """Tests for FlowConfig"""

    def test_defaults(self):
        """Test default configuration is the area-preserving RK4 flow"""
        config = FlowConfig()
        assert config.alpha == 0.0
        assert config.scheme == Scheme.EXPLICIT_RK4
        assert config.dt_policy == DtPolicy.CFL
        assert config.preserves_area_or_length

    def test_string_enums(self):
        """Test schemes and policies accept their string values"""
        config = FlowConfig(scheme="semi-implicit-graph", dt_policy="fixed", dt=1e-3)
        assert config.scheme == Scheme.SEMI_IMPLICIT_GRAPH
        assert config.dt_policy == DtPolicy.FIXED
        data = config.to_dict()
        assert data["scheme"] == "semi-implicit-graph"
        assert data["dt_policy"] == "fixed"

    def test_generic_alpha_not_tagged(self):
        """Test α outside {0, 1} runs but conserves neither area nor length"""
        assert not FlowConfig(alpha=0.5).preserves_area_or_length
        assert FlowConfig(alpha=1.0).preserves_area_or_length

    @pytest.mark.parametrize("kwargs", [
        {"alpha": -1.0},
        {"alpha": math.inf},
        {"safety": 0.0},
        {"safety": 1.5},
        {"implicit_factor": 100.0},
        {"dt_policy": "fixed", "dt": 0.0},
        {"t_end": 0.0},
        {"redistribution_stride": -1},
        {"feedback_gain": -0.1},
        {"convergence_strides": 0},
    ])
    def test_invalid_values(self, kwargs):
        """Test invalid configuration values raise ParameterError"""
        with pytest.raises(ParameterError):
            FlowConfig(**kwargs)

    def test_unknown_scheme(self):
        """Test an unknown scheme is rejected"""
        with pytest.raises(ValueError):
            FlowConfig(scheme="leapfrog")


@pytest.mark.unit
class TestHaltReason:
    """Tests for halt reasons"""

    def test_singular_reasons(self):
        """Test which reasons count as singular halts"""
        assert not HaltReason.COMPLETED.is_singular
        assert not HaltReason.CONVERGED.is_singular
        assert all(reason.is_singular for reason in HALT_PRIORITY)

    def test_priority_order(self):
        """Test blow-up outranks escape, embeddedness loss and graph breakdown"""
        assert HALT_PRIORITY == (HaltReason.BLOW_UP, HaltReason.ESCAPE,
                                 HaltReason.EMBEDDEDNESS_LOSS, HaltReason.GRAPH_BREAKDOWN)

    def test_flow_halted_message(self):
        """Test FlowHalted carries the reason and detail"""
        error = FlowHalted(HaltReason.ESCAPE, "max r too large")
        assert error.reason == HaltReason.ESCAPE
        assert str(error) == "escape: max r too large"


@pytest.mark.unit
class TestThresholds:
    """Tests for resolve_thresholds, time_step and check_halt"""

    def test_resolve_defaults(self, constant_surface):
        """Test the ceiling is 10³·max(κ_max, b) and escape is r_max − 5 cells"""
        curve = pole_circle(constant_surface, 1.0)
        config = resolve_thresholds(constant_surface, curve, FlowConfig())
        assert config.kappa_ceiling == pytest.approx(1e3 / math.tanh(1.0))
        assert config.escape_radius == pytest.approx(constant_surface.r_max - 5e-3)

    def test_resolve_keeps_explicit_values(self, constant_surface):
        """Test user thresholds are not overwritten"""
        curve = pole_circle(constant_surface, 1.0)
        config = resolve_thresholds(constant_surface, curve, FlowConfig(kappa_ceiling=50.0, escape_radius=3.0))
        assert (config.kappa_ceiling, config.escape_radius) == (50.0, 3.0)

    def test_fixed_time_step(self, constant_surface):
        """Test the fixed policy returns dt"""
        curve = pole_circle(constant_surface, 1.0)
        assert time_step(curve, FlowConfig(dt_policy="fixed", dt=2e-4)) == 2e-4

    def test_cfl_time_step(self, constant_surface):
        """Test σ·min(ds)²/2 and the implicit factor"""
        curve = pole_circle(constant_surface, 1.0, n=64)
        ds = 2 * math.pi * math.sinh(1.0) / 64
        assert time_step(curve, FlowConfig(safety=0.8)) == pytest.approx(0.4 * ds * ds, rel=1e-12)
        graph = perturbed_circle(constant_surface, 1.0, 2, 0.0, n=64)
        implicit = FlowConfig(safety=0.8, scheme="semi-implicit-graph", implicit_factor=10.0)
        assert time_step(graph, implicit) == pytest.approx(4.0 * ds * ds, rel=1e-12)

    def test_blow_up_outranks_escape(self, constant_surface):
        """Test simultaneous conditions report blow-up"""
        curve = pole_circle(constant_surface, 1.0)
        state = FlowState(t=0.0, curve=curve)
        config = FlowConfig().with_thresholds(kappa_ceiling=0.1, escape_radius=0.5)
        with pytest.raises(FlowHalted) as info:
            check_halt(constant_surface, curve, config, 1, state)
        assert info.value.reason == HaltReason.BLOW_UP
        assert info.value.state is state

    def test_escape(self, constant_surface):
        """Test max r above the escape radius"""
        curve = pole_circle(constant_surface, 1.0)
        config = FlowConfig().with_thresholds(kappa_ceiling=1e6, escape_radius=0.5)
        with pytest.raises(FlowHalted) as info:
            check_halt(constant_surface, curve, config, 1, FlowState(t=0.0, curve=curve))
        assert info.value.reason == HaltReason.ESCAPE

    def test_graph_breakdown(self, constant_surface):
        """Test |∂ᵤr| above the slope ceiling"""
        graph = perturbed_circle(constant_surface, 1.0, 3, 0.2, n=64)
        config = FlowConfig(slope_ceiling=0.1).with_thresholds(kappa_ceiling=1e6, escape_radius=10.0)
        with pytest.raises(FlowHalted) as info:
            check_halt(constant_surface, graph, config, 1, FlowState(t=0.0, curve=graph))
        assert info.value.reason == HaltReason.GRAPH_BREAKDOWN

    def test_no_halt(self, constant_surface):
        """Test a healthy state passes"""
        curve = pole_circle(constant_surface, 1.0)
        config = resolve_thresholds(constant_surface, curve, FlowConfig())
        check_halt(constant_surface, curve, config, 10, FlowState(t=0.0, curve=curve))
