"""
运行验证：对已完成的运行记录重新执行全部检查
"""
import logging
from typing import Optional, Sequence

from ..exceptions import HadamardFlowError
from ..surface import SurfaceProfile
from .bounds import check_escape_condition
from .checks import (
    check_convexity,
    check_curvature_decay,
    check_gauss_bonnet,
    check_hessian_comparison,
    check_inball_persistence,
    check_monotonicity,
    check_radius_bounds,
    check_support_bounds,
    hessian_center,
)
from .types import CheckReport, CheckStatus, DiagnosticsRecord, Snapshot, VerificationReport

logger = logging.getLogger(__name__)


def _finiteness(records: Sequence[DiagnosticsRecord]) -> CheckReport:
    bad = [r for r in records if not r.is_finite()]
    if not bad:
        return CheckReport("records.finite", CheckStatus.PASS, 0.0, 0.0, checked=len(records))
    return CheckReport("records.finite", CheckStatus.FAILURE, float("inf"), 0.0, t=bad[0].t,
                       checked=len(records), detail=f"{len(bad)} records with non-finite values")


def _escape(surface: SurfaceProfile, records: Sequence[DiagnosticsRecord]) -> CheckReport:
    name = "escape_condition"
    first = records[0]
    try:
        result = check_escape_condition(surface, first.L, abs(first.A))
    except HadamardFlowError as e:
        return CheckReport.skipped(name, str(e))
    detail = f"margin={result.margin!r}, rhs={result.rhs!r}"
    if not result.satisfied:
        return CheckReport.skipped(name, f"non-escape criterion does not apply ({detail})")
    return CheckReport(name, CheckStatus.PASS, -result.margin, 0.0, t=first.t, checked=1, detail=detail)


def verify_run(
    surface: SurfaceProfile,
    records: Sequence[DiagnosticsRecord],
    snapshots: Sequence[Snapshot],
    halt_reason: str,
    alpha: float,
    hessian_snapshots: Optional[Sequence[Snapshot]] = None,
) -> VerificationReport:
    """Run every check on a stored time series and its snapshots.

    Checks are pure functions of their inputs; the report order is fixed.
    hessian_snapshots defaults to the first and last snapshot.
    """
    report = VerificationReport()
    if not records:
        report.add(CheckReport("records.present", CheckStatus.FAILURE, detail="time series is empty"))
        return report

    report.add(_finiteness(records))
    for item in check_monotonicity(records, alpha, surface.a):
        report.add(item)
    for item in check_radius_bounds(surface, records, snapshots):
        report.add(item)
    report.add(_escape(surface, records))
    for item in check_gauss_bonnet(surface, records, snapshots):
        report.add(item)
    report.add(check_convexity(records, surface.a))
    for item in check_curvature_decay(records, halt_reason):
        report.add(item)
    for item in check_inball_persistence(surface, snapshots, records):
        report.add(item)
    for item in check_support_bounds(surface, snapshots, records):
        report.add(item)

    if hessian_snapshots is None:
        hessian_snapshots = [snapshots[0], snapshots[-1]] if len(snapshots) > 1 else list(snapshots)
    for snap in hessian_snapshots:
        for item in check_hessian_comparison(surface, snap.curve, hessian_center(snap), snap.t):
            item.name = f"{item.name}@step{snap.step}"
            report.add(item)

    logger.info(f"verification: {len(report.failures)} failures, {len(report.warnings)} warnings "
                f"over {len(report.checks)} checks")
    return report
