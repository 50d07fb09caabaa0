"""
诊断模块

不等式与单调性检查、几何界、指数衰减率拟合、运行记录验证。
"""
from ..surface import predicted_rate
from .types import (
    ALL_COLUMNS,
    EXTRA_COLUMNS,
    SNAPSHOT_COLUMNS,
    TIMESERIES_COLUMNS,
    CheckReport,
    CheckStatus,
    DiagnosticsRecord,
    FitResult,
    MonitorSettings,
    Snapshot,
    SpectrumEntry,
    SpectrumReport,
    VerificationReport,
    ViolationTracker,
    relative_error,
)
from .bounds import (
    EscapeCondition,
    barrier_radius,
    check_escape_condition,
    inner_radius_lower_bound,
    osserman_gap,
    persistence_time,
    support_lower_bound,
)
from .fitting import MIN_FIT_POINTS, amplitude_band, fit_exponential, time_band
from .measures import chart_hausdorff, curvature_evolution_residual, kappa_statistics
from .monitor import build_record, is_converged, measure_snapshot
from .checks import (
    check_convexity,
    check_curvature_decay,
    check_gauss_bonnet,
    check_geodesic_circle_bounds,
    check_hessian_comparison,
    check_inball_persistence,
    check_monotonicity,
    check_radius_bounds,
    check_support_bounds,
)
from .verify import verify_run

__all__ = [
    "ALL_COLUMNS",
    "EXTRA_COLUMNS",
    "SNAPSHOT_COLUMNS",
    "TIMESERIES_COLUMNS",
    "CheckReport",
    "CheckStatus",
    "DiagnosticsRecord",
    "FitResult",
    "MonitorSettings",
    "Snapshot",
    "SpectrumEntry",
    "SpectrumReport",
    "VerificationReport",
    "ViolationTracker",
    "relative_error",
    "EscapeCondition",
    "barrier_radius",
    "check_escape_condition",
    "inner_radius_lower_bound",
    "osserman_gap",
    "persistence_time",
    "support_lower_bound",
    "MIN_FIT_POINTS",
    "amplitude_band",
    "fit_exponential",
    "time_band",
    "chart_hausdorff",
    "curvature_evolution_residual",
    "kappa_statistics",
    "build_record",
    "is_converged",
    "measure_snapshot",
    "check_convexity",
    "check_curvature_decay",
    "check_gauss_bonnet",
    "check_geodesic_circle_bounds",
    "check_hessian_comparison",
    "check_inball_persistence",
    "check_monotonicity",
    "check_radius_bounds",
    "check_support_bounds",
    "verify_run",
    "predicted_rate",
]
