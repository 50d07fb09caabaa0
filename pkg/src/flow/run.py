"""
运行驱动：积分至 T_end 或停止条件，按步幅输出诊断记录与快照
"""
import logging
import math
from dataclasses import replace
from typing import Callable, Optional

import numpy as np

from ..curve import RadialGraph
from ..diagnostics.monitor import build_record, is_converged, measure_snapshot
from ..diagnostics.types import DiagnosticsRecord, MonitorSettings, Snapshot
from ..exceptions import HadamardFlowError, ParameterError
from ..surface import SurfaceProfile
from .global_term import global_term, mu_weighted_average
from .graph import step_graph
from .parametric import length_area, resolve_thresholds, step_parametric, time_step
from .types import CurveState, FlowConfig, FlowHalted, FlowState, HaltReason, RunRecord, Scheme

logger = logging.getLogger(__name__)

RecordCallback = Callable[[DiagnosticsRecord], None]
SnapshotCallback = Callable[[Snapshot], None]


def prepare_initial(curve: CurveState, config: FlowConfig) -> CurveState:
    """Representation required by the scheme; parametric curves are made counterclockwise."""
    if config.scheme == Scheme.SEMI_IMPLICIT_GRAPH:
        if isinstance(curve, RadialGraph):
            return curve
        return RadialGraph.from_curve(curve)
    if isinstance(curve, RadialGraph):
        curve = curve.to_curve()
    if curve.orientation < 0:
        logger.info("initial curve is clockwise; reversing it")
        curve = curve.reversed()
    return curve


class _Recorder:
    """Diagnostics emission for one run"""

    def __init__(self, surface: SurfaceProfile, result: RunRecord, monitor: MonitorSettings,
                 on_record: Optional[RecordCallback], on_snapshot: Optional[SnapshotCallback]):
        self.surface = surface
        self.result = result
        self.monitor = monitor
        self.on_record = on_record
        self.on_snapshot = on_snapshot
        self.last_step = -1

    def snapshot(self, state: FlowState):
        snap, radii, support = measure_snapshot(self.surface, state.curve, state.step, state.t, self.monitor)
        self.result.snapshots.append(snap)
        if self.on_snapshot:
            self.on_snapshot(snap)
        return radii, support

    def emit(self, state: FlowState, snapshot: bool) -> DiagnosticsRecord:
        radii, support = self.snapshot(state) if snapshot else (None, None)
        record = build_record(self.surface, state.curve, state.step, state.t, state.h,
                              state.dt_used, radii, support)
        self.result.records.append(record)
        self.last_step = state.step
        if self.on_record:
            self.on_record(record)
        return record


def run(
    surface: SurfaceProfile,
    initial: CurveState,
    config: FlowConfig,
    monitor: Optional[MonitorSettings] = None,
    on_record: Optional[RecordCallback] = None,
    on_snapshot: Optional[SnapshotCallback] = None,
) -> RunRecord:
    """Integrate the constrained flow until T_end, convergence or a halt signal.

    Records are emitted at step 0, every diagnostics stride and at the final
    state; snapshots at step 0, every snapshot stride and at the final state
    when snapshots are enabled. Every snapshot coincides with a record.
    """
    config.validate()
    if config.feedback_gain > 0.0 and not config.preserves_area_or_length:
        logger.warning(f"feedback correction only applies to alpha in {{0, 1}}; ignored for alpha={config.alpha!r}")
    monitor = monitor or MonitorSettings()
    curve = prepare_initial(initial, config)
    config = resolve_thresholds(surface, curve, config)
    step = step_graph if config.scheme == Scheme.SEMI_IMPLICIT_GRAPH else step_parametric

    h0 = global_term(surface, curve, config.alpha)
    length0, area0 = length_area(surface, curve)
    state = FlowState(t=0.0, curve=curve, h=h0, reference_area=area0, reference_length=length0)
    result = RunRecord(surface.surface_id, config, initial_kappa_min=float(np.min(curve.kappa)))
    recorder = _Recorder(surface, result, monitor, on_record, on_snapshot)
    snapshots_on = monitor.snapshot_stride > 0
    logger.info(f"run start: {surface.surface_id}, alpha={config.alpha!r}, scheme={config.scheme.value}, "
                f"L0={length0!r}, A0={area0!r}")

    recorder.emit(state, snapshots_on)
    streak = 0
    t_stop = config.t_end * (1.0 - 1e-12)
    while True:
        if state.t >= t_stop:
            result.halt_reason = HaltReason.COMPLETED
            break
        if state.step >= config.max_steps:
            result.halt_reason = HaltReason.COMPLETED
            result.halt_detail = f"max_steps = {config.max_steps} reached"
            break
        dt = min(time_step(state.curve, config), config.t_end - state.t)
        try:
            state = step(surface, state, config, dt)
        except FlowHalted as halt:
            result.halt_reason = halt.reason
            result.halt_detail = halt.detail
            logger.warning(f"run halted at step {state.step}, t={state.t!r}: {halt}")
            break

        wants_snapshot = snapshots_on and monitor.wants_snapshot(state.step)
        if not (wants_snapshot or monitor.wants_record(state.step)):
            continue
        record = recorder.emit(state, wants_snapshot)
        r = state.curve.r
        mean_radius = float(np.mean(r))
        converged = is_converged(record, config.convergence_tolerance, config.convergence_radius_tolerance,
                                 mean_radius, float(np.max(np.abs(r - mean_radius))))
        streak = streak + 1 if converged else 0
        if streak >= config.convergence_strides and config.stop_on_convergence:
            result.halt_reason = HaltReason.CONVERGED
            break

    if result.halt_reason == HaltReason.COMPLETED and streak >= config.convergence_strides:
        result.halt_reason = HaltReason.CONVERGED
    if recorder.last_step != state.step:
        recorder.emit(state, snapshots_on)
    elif snapshots_on and result.snapshots[-1].step != state.step:
        recorder.snapshot(state)

    result.final_state = state
    try:
        result.mu_average = mu_weighted_average(surface, state.curve)
    except HadamardFlowError as e:
        logger.debug(f"μ-weighted average unavailable: {e}")
        result.mu_average = math.nan
    logger.info(f"run end: {result.halt_reason.value} at step {state.step}, t={state.t!r}")
    return result


def run_to_time(surface: SurfaceProfile, initial: CurveState, config: FlowConfig, t_end: float) -> CurveState:
    """Curve at t_end without diagnostics; a singular halt before t_end is a ParameterError."""
    monitor = MonitorSettings(diagnostics_stride=0, snapshot_stride=0, radii=False, support=False)
    result = run(surface, initial, replace(config, t_end=t_end, stop_on_convergence=False), monitor)
    if result.halt_reason.is_singular:
        raise ParameterError(f"run halted before t_end: {result.halt_reason.value} ({result.halt_detail})")
    return result.final_state.curve
