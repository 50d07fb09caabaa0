"""
模态扰动实验：线性化谱 λ_i = (−i² + ψ(𝔯))/φ(𝔯)² 的数值复现
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional

import numpy as np

from ..curve import CurveKind, initial_curve
from ..diagnostics.fitting import MIN_FIT_POINTS, amplitude_band, fit_exponential, time_band
from ..diagnostics.types import FitResult, SpectrumEntry, SpectrumReport, relative_error
from ..exceptions import ExperimentInconclusiveError, ParameterError
from ..surface import SurfaceProfile, predicted_rate
from .graph import step_graph
from .parametric import resolve_thresholds, time_step
from .types import FlowConfig, FlowHalted, FlowState, Scheme

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 256
LINEAR_REGIME = 1e-2
FLOOR_FRACTION = 1e-6
CEILING_FRACTION = 0.5
# 中性模态回退拟合时跳过的初始时间比例
TRANSIENT_FRACTION = 0.1


@dataclass
class ModeSeries:
    """Amplitude a_i(t) = (1/π)∮(r − r̄)cos(iu) du sampled at every step"""
    mode: int
    epsilon: float
    times: List[float] = field(default_factory=list)
    amplitudes: List[float] = field(default_factory=list)
    halt: str = ""

    def append(self, t: float, amplitude: float) -> None:
        self.times.append(t)
        self.amplitudes.append(amplitude)


def validate_experiment(surface: SurfaceProfile, radius: float, mode: int, epsilon: float) -> None:
    if mode < 1:
        raise ParameterError(f"mode must be >= 1, got {mode}")
    if not 0.0 < epsilon <= LINEAR_REGIME * radius:
        raise ParameterError(f"ε must lie in (0, {LINEAR_REGIME}·𝔯], got {epsilon!r}")
    if not (surface.grid_step < radius - epsilon and radius + epsilon < surface.r_max):
        raise ParameterError(f"perturbed circle about 𝔯={radius!r} leaves the annulus")


def mode_series(
    surface: SurfaceProfile,
    radius: float,
    mode: int,
    epsilon: float,
    config: FlowConfig,
    n: int = DEFAULT_RESOLUTION,
) -> ModeSeries:
    """Evolve r = 𝔯 + ε cos(iu) with the graph scheme until |a_i| < 1e−6·ε or t > t_end"""
    validate_experiment(surface, radius, mode, epsilon)
    graph = initial_curve(surface, CurveKind.PERTURBED_CIRCLE,
                          {"radius": radius, "mode": mode, "amplitude": epsilon}, n)
    config = resolve_thresholds(surface, graph, replace(config, scheme=Scheme.SEMI_IMPLICIT_GRAPH))
    area = float(np.sum(surface.area_primitive(graph.r)) * graph.du)
    state = FlowState(t=0.0, curve=graph, reference_area=area, reference_length=float(np.sum(graph.ds)))
    series = ModeSeries(mode, epsilon)
    series.append(0.0, graph.mode_amplitude(mode))
    floor = FLOOR_FRACTION * epsilon

    while state.t <= config.t_end and state.step < config.max_steps:
        try:
            state = step_graph(surface, state, config, time_step(state.curve, config))
        except FlowHalted as halt:
            series.halt = str(halt)
            logger.warning(f"mode {mode} experiment halted: {halt}")
            break
        amplitude = state.curve.mode_amplitude(mode)
        series.append(state.t, amplitude)
        if abs(amplitude) < floor:
            break
    logger.debug(f"mode {mode}: {len(series.times)} samples up to t={state.t!r}")
    return series


def fit_mode(series: ModeSeries) -> FitResult:
    """Fit over 1e−6·ε < |a_i| < 0.5·ε; a mode that never decays into that band
    is fitted after the initial transient instead."""
    epsilon = series.epsilon
    try:
        return fit_exponential(series.times, series.amplitudes,
                               amplitude_band(FLOOR_FRACTION * epsilon, CEILING_FRACTION * epsilon))
    except ExperimentInconclusiveError as first:
        times = np.asarray(series.times)
        if times.size < MIN_FIT_POINTS:
            raise first
        start = TRANSIENT_FRACTION * float(times[-1])
        logger.debug(f"mode {series.mode}: amplitude band empty, fitting after t={start!r}")
        try:
            return fit_exponential(times, series.amplitudes, time_band(start))
        except ExperimentInconclusiveError:
            raise first


def mode_experiment(
    surface: SurfaceProfile,
    radius: float,
    mode: int,
    epsilon: float,
    config: FlowConfig,
    n: int = DEFAULT_RESOLUTION,
) -> SpectrumEntry:
    """Fitted decay rate of mode i about the geodesic circle 𝔯 against the linearized prediction"""
    series = mode_series(surface, radius, mode, epsilon, config, n)
    fit = fit_mode(series)
    predicted = predicted_rate(surface, radius, mode)
    entry = SpectrumEntry(mode, predicted, fit.rate, relative_error(fit.rate, predicted), fit.window, fit.r_squared)
    logger.info(f"mode {mode}: predicted {predicted!r}, fitted {fit.rate!r}")
    return entry


def spectrum(
    surface: SurfaceProfile,
    radius: float,
    modes: Iterable[int],
    epsilon: float,
    config: FlowConfig,
    n: int = DEFAULT_RESOLUTION,
    report: Optional[SpectrumReport] = None,
) -> SpectrumReport:
    """Run mode_experiment for each mode; inconclusive modes are listed, not raised."""
    report = report or SpectrumReport(surface.surface_id, radius, epsilon)
    for mode in modes:
        try:
            report.add(mode_experiment(surface, radius, mode, epsilon, config, n))
        except ExperimentInconclusiveError as e:
            logger.warning(f"mode {mode} inconclusive: {e}")
            report.inconclusive.append(mode)
    return report
