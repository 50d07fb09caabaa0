"""
Unit tests for the scenario schema

Tests defaults, discriminated blocks, unknown-key rejection and the
conversion to FlowConfig / MonitorSettings.
"""

import pytest

from src.config import parse_scenario
from src.config.schema import ConstantSurface, PinchedSurface, TabulatedSurface
from src.curve import CurveKind
from src.exceptions import ScenarioError
from src.flow import DtPolicy, Scheme


def minimal(**overrides):
    data = {
        "spec_version": "1.0",
        "surface": {"family": "constant_curvature", "a": 1.0},
        "initial": {"kind": "circle", "radius": 1.0},
    }
    data.update(overrides)
    return data


@pytest.mark.unit
class TestScenarioDefaults:
    """Tests for defaults filled in by the schema"""

    def test_minimal_scenario(self):
        """Test a minimal document validates with defaults"""
        scenario = parse_scenario(minimal())
        assert scenario.name == "scenario"
        assert scenario.seed == 0
        assert scenario.flow.alpha == 0.0
        assert scenario.flow.scheme == Scheme.EXPLICIT_RK4
        assert scenario.flow.step.policy == "cfl"
        assert scenario.flow.step.safety == 0.8
        assert scenario.flow.implicit_factor == 10.0
        assert scenario.diagnostics.stride == 1
        assert scenario.output.svg is True
        assert scenario.spectrum is None

    def test_flow_config_cfl(self):
        """Test the CFL step block maps onto FlowConfig"""
        config = parse_scenario(minimal(flow={"step": {"policy": "cfl", "safety": 0.5}})).flow.to_flow_config()
        assert config.dt_policy == DtPolicy.CFL
        assert config.safety == 0.5

    def test_flow_config_fixed(self):
        """Test the fixed step block maps onto FlowConfig"""
        flow = {"alpha": 1.0, "scheme": "semi-implicit-graph", "step": {"policy": "fixed", "dt": 1e-4}}
        config = parse_scenario(minimal(flow=flow)).flow.to_flow_config()
        assert config.dt_policy == DtPolicy.FIXED
        assert config.dt == 1e-4
        assert config.alpha == 1.0
        assert config.scheme == Scheme.SEMI_IMPLICIT_GRAPH

    def test_initial_params(self):
        """Test (kind, params, samples) for the curve builder"""
        data = minimal(initial={"kind": "perturbed_circle", "radius": 1.0, "mode": 3, "amplitude": 0.01,
                                "samples": 64})
        kind, params, samples = parse_scenario(data).initial_params()
        assert kind == CurveKind.PERTURBED_CIRCLE
        assert params == {"radius": 1.0, "mode": 3, "amplitude": 0.01}
        assert samples == 64

    def test_monitor_settings(self):
        """Test diagnostics and output blocks map onto MonitorSettings"""
        data = minimal(seed=7, diagnostics={"stride": 4, "radii": False, "grid_size": 8},
                       output={"snapshot_stride": 20})
        settings = parse_scenario(data).monitor_settings()
        assert settings.diagnostics_stride == 4
        assert settings.snapshot_stride == 20
        assert settings.radii is False
        assert settings.search.grid_size == 8
        assert settings.search.seed == 7

    def test_spectrum_modes_sorted(self):
        """Test spectrum modes are deduplicated and sorted"""
        scenario = parse_scenario(minimal(spectrum={"radius": 1.0, "modes": [3, 1, 3]}))
        assert scenario.spectrum.modes == [1, 3]
        assert scenario.spectrum.epsilon == 1e-3


@pytest.mark.unit
class TestSurfaceBlocks:
    """Tests for the surface discriminator"""

    @pytest.mark.parametrize("block,kind", [
        ({"family": "constant_curvature", "a": 2.0}, ConstantSurface),
        ({"family": "tanh_pinch", "a": 1.0, "b": 2.0}, PinchedSurface),
        ({"family": "rational_pinch", "a": 1.0, "b": 1.0, "c": 3.0}, PinchedSurface),
        ({"family": "tabulated", "table_path": "profile.csv"}, TabulatedSurface),
    ])
    def test_families(self, block, kind):
        """Test each family parses to its block type"""
        assert isinstance(parse_scenario(minimal(surface=block)).surface, kind)

    def test_pinched_defaults(self):
        """Test c defaults to 1"""
        surface = parse_scenario(minimal(surface={"family": "tanh_pinch", "a": 1.0, "b": 2.0})).surface
        assert surface.c == 1.0
        assert surface.r_max is None

    def test_b_below_a(self):
        """Test pinching requires a <= b"""
        with pytest.raises(ScenarioError, match="a <= b"):
            parse_scenario(minimal(surface={"family": "tanh_pinch", "a": 2.0, "b": 1.0}))


@pytest.mark.unit
class TestScenarioRejections:
    """Tests for invalid documents"""

    @pytest.mark.parametrize("data", [
        minimal(spec_version="2.0"),
        minimal(extra_key=1),
        minimal(surface={"family": "constant_curvature", "a": 1.0, "colour": "red"}),
        minimal(surface={"family": "constant_curvature", "a": -1.0}),
        minimal(surface={"family": "sphere", "a": 1.0}),
        minimal(initial={"kind": "circle", "radius": 1.0, "samples": 8}),
        minimal(initial={"kind": "fourier_graph", "c0": 1.0, "cos": {"0": 0.1}}),
        minimal(flow={"step": {"policy": "fixed"}}),
        minimal(flow={"alpha": -1.0}),
        minimal(flow={"implicit_factor": 100.0}),
        minimal(spectrum={"radius": 1.0, "modes": [0]}),
        minimal(name="a/b"),
        minimal(name=""),
    ])
    def test_invalid(self, data):
        """Test every invalid document is a ScenarioError"""
        with pytest.raises(ScenarioError):
            parse_scenario(data)

    def test_error_names_location(self):
        """Test the message points at the offending key"""
        with pytest.raises(ScenarioError, match="flow.t_end"):
            parse_scenario(minimal(flow={"t_end": 0.0}), source="demo.json")

    def test_not_an_object(self):
        """Test a JSON array is rejected"""
        with pytest.raises(ScenarioError, match="JSON object"):
            parse_scenario([1, 2, 3])
