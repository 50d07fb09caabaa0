"""
Shared pytest configuration and fixtures for all tests

This file provides:
- Session-scoped surfaces (profile construction is the expensive part)
- Scenario / settings file factories for the CLI tests
- Output level reset
"""

import json
from pathlib import Path
from typing import Callable, Dict

import pytest

from src.surface import build_constant_curvature, build_from_curvature
from src.utils.output import OutputFormatter, OutputLevel


# ============================================================================
# Surfaces
# ============================================================================

@pytest.fixture(scope="session")
def constant_surface():
    """𝒦 ≡ −1"""
    return build_constant_curvature(1.0)


@pytest.fixture(scope="session")
def tanh_surface():
    """tanh_pinch(a=1, b=2, c=1)"""
    return build_from_curvature("tanh_pinch", 1.0, 2.0, 1.0)


@pytest.fixture(scope="session")
def rational_surface():
    """rational_pinch(a=0.5, b=1.5, c=2) on a shorter grid"""
    return build_from_curvature("rational_pinch", 0.5, 1.5, 2.0, r_max=12.0)


# ============================================================================
# Scenario & settings files
# ============================================================================

@pytest.fixture
def settings_file(tmp_path: Path, monkeypatch) -> Path:
    """Settings file with the run-event log inside tmp_path"""
    log_dir = tmp_path / "logs"
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({
        "threads": 1,
        "logging": {"enabled": True, "log_dir": str(log_dir), "batch_timeout": 0.05},
        "output": {"default_directory": str(tmp_path / "runs")},
    }))
    for name in ("HF_THREADS", "HF_LOG_DIR", "HF_LOG_ENABLED"):
        monkeypatch.delenv(name, raising=False)
    return path


@pytest.fixture
def write_scenario(tmp_path: Path) -> Callable[..., Path]:
    """Write a scenario dict to tmp_path/<name>.json"""

    def _write(data: Dict, filename: str = None) -> Path:
        path = tmp_path / (filename or f"{data.get('name', 'scenario')}.json")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data))
        return path

    return _write


@pytest.fixture
def circle_scenario() -> Dict:
    """Geodesic circle on 𝒦 ≡ −1: the flow is stationary"""
    return {
        "spec_version": "1.0",
        "name": "circle",
        "surface": {"family": "constant_curvature", "a": 1.0},
        "initial": {"kind": "circle", "radius": 1.0, "samples": 64},
        "flow": {"alpha": 0.0, "step": {"policy": "fixed", "dt": 1e-3}, "t_end": 0.02,
                 "stop_on_convergence": False},
        "diagnostics": {"stride": 5, "radii": False, "support": False},
    }


@pytest.fixture(autouse=True)
def reset_output_level():
    """Reset output level after each test"""
    yield
    OutputFormatter.set_level(OutputLevel.NORMAL)
