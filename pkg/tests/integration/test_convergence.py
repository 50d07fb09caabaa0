"""
集成测试：AP 流在 tanh 收缩曲面上收敛到测地圆

使用随仓库发布的 ap_tanh_convergence 场景。
"""
from pathlib import Path

import numpy as np
import pytest

from src.config import build_initial, build_surface, load_scenario
from src.diagnostics import CheckStatus, verify_run
from src.flow import HaltReason, run

SCENARIO = Path(__file__).resolve().parents[2] / "templates" / "scenarios" / "ap_tanh_convergence.json"


@pytest.fixture(scope="module")
def converged():
    scenario = load_scenario(SCENARIO)
    surface = build_surface(scenario.surface)
    result = run(surface, build_initial(scenario, surface), scenario.flow.to_flow_config(),
                 scenario.monitor_settings())
    return surface, result


@pytest.mark.integration
@pytest.mark.slow
@pytest.mark.timeout(600)
class TestConvergence:
    """收敛到测地圆"""

    def test_halts_converged(self, converged):
        """测试停止原因为 converged 且早于 T_end"""
        _, result = converged
        assert result.halt_reason == HaltReason.CONVERGED
        assert result.final_state.t < 50.0

    def test_round_and_area_preserved(self, converged):
        """测试 max|r − r̄| < 1e−6 且面积相对误差 < 1e−6"""
        _, result = converged
        r = result.final_state.curve.r
        assert float(np.max(np.abs(r - np.mean(r)))) < 1e-6
        first, last = result.records[0], result.records[-1]
        assert abs(last.A - first.A) / first.A < 1e-6

    def test_decay_checks(self, converged):
        """测试 sup|κ − h| 衰减检查通过"""
        surface, result = converged
        report = verify_run(surface, result.records, result.snapshots, result.halt_reason.value, 0.0)
        statuses = {c.name: c.status for c in report.checks}
        assert statuses["curvature_decay.final"] == CheckStatus.PASS
        shape = report.select(["curvature_decay", "convexity", "radius", "gauss_bonnet", "monotonicity.length"])
        assert not shape.failures, [c.name for c in shape.failures]

    def test_summary(self, converged):
        """测试摘要中的收敛半径偏差"""
        _, result = converged
        summary = result.summary()
        assert summary["halt_reason"] == "converged"
        assert summary["final_radius_deviation"] < 1e-6
