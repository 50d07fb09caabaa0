"""
运行监控：由曲线状态生成诊断记录与快照
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..curve import CurveLike, as_curve, winding_number
from ..exceptions import HadamardFlowError
from ..geodesics import RadiiResult, inradius_outradius, support_function
from ..surface import SurfaceProfile, isoperimetric_deficit
from .measures import kappa_statistics
from .types import DiagnosticsRecord, MonitorSettings, Snapshot

logger = logging.getLogger(__name__)


def build_record(
    surface: SurfaceProfile,
    curve: CurveLike,
    step: int,
    t: float,
    h: float,
    dt_used: float = 0.0,
    radii: Optional[RadiiResult] = None,
    support: Optional[Tuple[float, float]] = None,
) -> DiagnosticsRecord:
    """Diagnostics of one state; h is the flow's global term at that state."""
    curve = as_curve(curve)
    length, area = curve.length, curve.area
    kappa_min, kappa_max, sup_dev, energy = kappa_statistics(curve, h)
    record = DiagnosticsRecord(
        step=step,
        t=t,
        L=length,
        A=area,
        Delta=isoperimetric_deficit(length, area, surface.a),
        h=h,
        kappa_min=kappa_min,
        kappa_max=kappa_max,
        sup_kappa_minus_h=sup_dev,
        gb_residual=curve.gauss_bonnet_residual,
        r_min=float(np.min(curve.r)),
        r_max=float(np.max(curve.r)),
        dt_used=dt_used,
        kappa_energy=energy,
    )
    record.margins["length_area"] = length - surface.a * abs(area)
    if radii is not None:
        record.rho_minus = radii.rho_minus
        record.rho_plus = radii.rho_plus
    if support is not None:
        record.u_supp_min, record.u_supp_max = support
    return record


def measure_snapshot(
    surface: SurfaceProfile,
    curve: CurveLike,
    step: int,
    t: float,
    settings: MonitorSettings,
) -> Tuple[Snapshot, Optional[RadiiResult], Optional[Tuple[float, float]]]:
    """Snapshot with radii and support-function extrema when requested.

    Failures of the expensive searches are logged and leave the optional
    quantities empty; they never halt a run.
    """
    curve = as_curve(curve)
    snapshot = Snapshot(step=step, t=t, curve=curve)
    radii: Optional[RadiiResult] = None
    support: Optional[Tuple[float, float]] = None
    if settings.radii:
        try:
            radii = inradius_outradius(surface, curve, settings.search)
            snapshot.center_minus = radii.center_minus
            snapshot.center_plus = radii.center_plus
            snapshot.rho_minus = radii.rho_minus
            snapshot.rho_plus = radii.rho_plus
            snapshot.radii_accuracy = radii.accuracy
        except HadamardFlowError as e:
            logger.warning(f"radii search failed at step {step}: {e}")
    if settings.support and radii is not None and winding_number(curve, radii.center_minus) != 0:
        try:
            values = support_function(surface, radii.center_minus, curve)
            support = (float(np.min(values)), float(np.max(values)))
        except HadamardFlowError as e:
            logger.warning(f"support function failed at step {step}: {e}")
    return snapshot, radii, support


def is_converged(record: DiagnosticsRecord, tolerance: float, radius_tolerance: float,
                 mean_radius: float, radius_deviation: float) -> bool:
    """sup|κ − h| < tolerance and the curve within radius_tolerance·r̄ of a pole circle"""
    if not math.isfinite(record.sup_kappa_minus_h):
        return False
    return record.sup_kappa_minus_h < tolerance and radius_deviation < radius_tolerance * mean_radius
