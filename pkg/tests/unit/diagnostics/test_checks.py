"""Unit tests for the inequality and monotonicity checks"""

import math

import pytest

from src.diagnostics import (
    CheckStatus,
    DiagnosticsRecord,
    MonitorSettings,
    Snapshot,
    check_convexity,
    check_curvature_decay,
    check_gauss_bonnet,
    check_geodesic_circle_bounds,
    check_hessian_comparison,
    check_monotonicity,
    check_radius_bounds,
    verify_run,
)
from src.flow import FlowConfig, run
from src.geodesics import POLE, ChartPoint
from src.surface import model_disk
from tests.fixtures.curves import chart_ellipse, pole_circle


def record(step, L=7.0, A=3.0, Delta=None, kappa_min=1.3, sup=1e-3, gb=0.0, **extra):
    """Synthetic time-series row on 𝒦 ≡ −1"""
    if Delta is None:
        Delta = L * L - 4.0 * math.pi * A - A * A
    values = dict(step=step, t=0.01 * step, L=L, A=A, Delta=Delta, h=1.3, kappa_min=kappa_min,
                  kappa_max=kappa_min + 0.1, sup_kappa_minus_h=sup, gb_residual=gb, r_min=0.9, r_max=1.1)
    values.update(extra)
    return DiagnosticsRecord(**values)


def statuses(reports):
    return {r.name: r.status for r in reports}


@pytest.mark.unit
class TestMonotonicity:
    """Tests for check_monotonicity"""

    def test_area_preserving_pass(self):
        """Test decreasing L at fixed A passes for α = 0"""
        records = [record(k, L=7.0 - 0.01 * k) for k in range(5)]
        result = statuses(check_monotonicity(records, 0.0, 1.0))
        assert set(result.values()) == {CheckStatus.PASS}

    def test_length_increase_fails(self):
        """Test a growing L is a failure for α = 0"""
        records = [record(k, L=7.0 + 1e-3 * k) for k in range(5)]
        result = statuses(check_monotonicity(records, 0.0, 1.0))
        assert result["monotonicity.length"] == CheckStatus.FAILURE
        assert result["monotonicity.deficit"] == CheckStatus.FAILURE

    def test_area_drift_grades(self):
        """Test small area drift warns and large drift fails"""
        small = [record(0), record(1, A=3.0 * (1.0 + 1e-8))]
        large = [record(0), record(1, A=3.0 * (1.0 + 1e-6))]
        assert statuses(check_monotonicity(small, 0.0, 1.0))["monotonicity.area"] == CheckStatus.WARNING
        assert statuses(check_monotonicity(large, 0.0, 1.0))["monotonicity.area"] == CheckStatus.FAILURE

    def test_length_preserving(self):
        """Test α = 1 conserves L and lets A grow"""
        records = [record(k, A=3.0 + 0.01 * k) for k in range(5)]
        result = statuses(check_monotonicity(records, 1.0, 1.0))
        assert set(result.values()) == {CheckStatus.PASS}
        shrinking = [record(k, A=3.0 - 0.01 * k) for k in range(5)]
        assert statuses(check_monotonicity(shrinking, 1.0, 1.0))["monotonicity.area"] == CheckStatus.FAILURE

    def test_skipped(self):
        """Test fractional α and single records are skipped"""
        records = [record(0), record(1)]
        assert set(statuses(check_monotonicity(records, 0.5, 1.0)).values()) == {CheckStatus.SKIPPED}
        assert set(statuses(check_monotonicity(records[:1], 0.0, 1.0)).values()) == {CheckStatus.SKIPPED}


@pytest.mark.unit
class TestConvexityAndDecay:
    """Tests for check_convexity and check_curvature_decay"""

    def test_convexity_holds(self):
        """Test κ_min staying above min(κ_min(0), a)"""
        records = [record(k, kappa_min=1.3 - 0.05 * k) for k in range(4)]
        assert check_convexity(records, 1.0).status == CheckStatus.PASS

    def test_convexity_lost(self):
        """Test κ_min dropping below the floor fails"""
        records = [record(0, kappa_min=0.5), record(1, kappa_min=0.4)]
        report = check_convexity(records, 1.0)
        assert report.status == CheckStatus.FAILURE
        assert report.worst_violation == pytest.approx(0.1)
        assert report.t == pytest.approx(0.01)

    def test_convexity_skipped(self):
        """Test non-convex initial data is skipped"""
        assert check_convexity([record(0, kappa_min=-0.2)], 1.0).status == CheckStatus.SKIPPED
        assert check_convexity([], 1.0).status == CheckStatus.SKIPPED

    def test_decay_requires_convergence(self):
        """Test only converged runs are checked"""
        records = [record(k) for k in range(4)]
        assert set(statuses(check_curvature_decay(records, "completed")).values()) == {CheckStatus.SKIPPED}

    def test_decay_converged(self):
        """Test a decaying tail below threshold passes"""
        records = [record(k, sup=10.0 ** (-k - 3)) for k in range(6)]
        result = statuses(check_curvature_decay(records, "converged"))
        assert result == {"curvature_decay.final": CheckStatus.PASS, "curvature_decay.tail": CheckStatus.PASS}

    def test_decay_tail_growth_warns(self):
        """Test a growing tail is a warning only"""
        records = [record(0, sup=1e-3), record(1, sup=1e-7), record(2, sup=2e-7), record(3, sup=3e-7)]
        result = statuses(check_curvature_decay(records, "converged"))
        assert result["curvature_decay.tail"] == CheckStatus.WARNING
        assert result["curvature_decay.final"] == CheckStatus.PASS


@pytest.mark.unit
class TestGeometricChecks:
    """Tests for checks that need the surface"""

    def test_gauss_bonnet_residual_is_warning_only(self, constant_surface):
        """Test a large residual never fails the run"""
        reports = statuses(check_gauss_bonnet(constant_surface, [record(0, gb=1e-3)], []))
        assert reports["gauss_bonnet.residual"] == CheckStatus.WARNING
        assert reports["gauss_bonnet.lower_bound"] == CheckStatus.SKIPPED

    def test_gauss_bonnet_lower_bound(self, constant_surface):
        """Test ∮κ ds ≥ 2π + a²A on a geodesic circle"""
        curve = pole_circle(constant_surface, 1.0)
        snap = Snapshot(step=0, t=0.0, curve=curve)
        reports = statuses(check_gauss_bonnet(constant_surface, [record(0)], [snap]))
        assert reports["gauss_bonnet.lower_bound"] == CheckStatus.PASS

    def test_radius_bounds_on_model_disk(self, constant_surface):
        """Test exact radii of a geodesic circle satisfy every radius bound"""
        length, area = model_disk(1.0, 1.0)
        curve = pole_circle(constant_surface, 1.0)
        records = [record(0, L=length, A=area)]
        snap = Snapshot(step=0, t=0.0, curve=curve, center_minus=POLE, center_plus=POLE,
                        rho_minus=1.0, rho_plus=1.0, radii_accuracy=1e-6)
        reports = check_radius_bounds(constant_surface, records, [snap])
        assert all(r.status == CheckStatus.PASS for r in reports), statuses(reports)

    def test_radius_bounds_catch_bad_radii(self, constant_surface):
        """Test an inradius below r₁ is a failure"""
        length, area = model_disk(1.0, 1.0)
        curve = pole_circle(constant_surface, 1.0)
        snap = Snapshot(step=0, t=0.0, curve=curve, rho_minus=0.5, rho_plus=1.0, radii_accuracy=1e-6)
        reports = statuses(check_radius_bounds(constant_surface, [record(0, L=length, A=area)], [snap]))
        assert reports["radius.inner_lower"] == CheckStatus.FAILURE

    def test_circle_curvature_bounds(self, tanh_surface, constant_surface):
        """Test a·coth(ar) ≤ φ'/φ ≤ b·coth(br) on valid surfaces"""
        assert check_geodesic_circle_bounds(tanh_surface).status != CheckStatus.FAILURE
        assert check_geodesic_circle_bounds(constant_surface).status != CheckStatus.FAILURE

    def test_hessian_comparison_off_pole(self, tanh_surface):
        """Test the Hessian comparison along an ellipse about an interior point"""
        curve = chart_ellipse(tanh_surface, n=128)
        reports = check_hessian_comparison(tanh_surface, curve, ChartPoint(0.3, 0.3), t=0.0)
        assert [r.name for r in reports] == ["hessian.tangent", "hessian.normal", "hessian.mixed"]
        assert all(r.status != CheckStatus.FAILURE for r in reports)
        assert all(r.checked == 128 for r in reports)

    @pytest.mark.parametrize("p0", [ChartPoint(0.3, 0.3), POLE])
    def test_hessian_equality_on_constant_curvature(self, constant_surface, p0):
        """Test a = b turns every Hessian comparison into an equality graded as pass"""
        curve = chart_ellipse(constant_surface, n=128)
        reports = check_hessian_comparison(constant_surface, curve, p0, t=0.0)
        assert all(r.status == CheckStatus.PASS for r in reports), statuses(reports)
        assert all(abs(r.worst_violation) < 1e-8 for r in reports)

    def test_circle_curvature_equality_on_constant_curvature(self, constant_surface):
        """Test φ'/φ = a·coth(ar) on the model surface is a pass"""
        assert check_geodesic_circle_bounds(constant_surface).status == CheckStatus.PASS


@pytest.mark.unit
class TestVerifyRun:
    """Tests for verify_run"""

    def test_empty_records(self, constant_surface):
        """Test an empty time series is a failure"""
        report = verify_run(constant_surface, [], [], "completed", 0.0)
        assert [c.name for c in report.checks] == ["records.present"]
        assert not report.passed()

    def test_non_finite_record(self, constant_surface):
        """Test NaN values are reported"""
        records = [record(0), record(1, L=math.nan)]
        report = verify_run(constant_surface, records, [], "blow_up", 0.0)
        assert statuses(report.checks)["records.finite"] == CheckStatus.FAILURE

    def test_synthetic_run_passes(self, constant_surface):
        """Test a consistent series without snapshots passes"""
        length, area = model_disk(1.0, 1.0)
        records = [record(k, L=length * (1.0 - 1e-4 * k), A=area, kappa_min=1.31) for k in range(4)]
        report = verify_run(constant_surface, records, [], "completed", 0.0)
        assert report.passed()
        assert report.checks[0].name == "records.finite"
        assert statuses(report.checks)["escape_condition"] == CheckStatus.PASS

    def test_stationary_circle_passes_strict(self, constant_surface):
        """Test a geodesic circle run with radii and snapshots has no warnings"""
        config = FlowConfig(dt_policy="fixed", dt=1e-3, t_end=0.01, stop_on_convergence=False)
        monitor = MonitorSettings(diagnostics_stride=1, snapshot_stride=5)
        result = run(constant_surface, pole_circle(constant_surface, 1.0, n=32), config, monitor)
        report = verify_run(constant_surface, result.records, result.snapshots,
                            result.halt_reason.value, 0.0)
        assert report.passed(strict=True), [c.name for c in report.warnings + report.failures]
        hessian = [c for c in report.checks if c.name.startswith("hessian.")]
        assert hessian and all(c.status == CheckStatus.PASS for c in hessian)
