"""Exponential-rate fitting"""

import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from ..exceptions import ExperimentInconclusiveError
from .types import FitResult

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 10

WindowRule = Callable[[np.ndarray, np.ndarray], np.ndarray]


def amplitude_band(low: float, high: float) -> WindowRule:
    """Select samples with low < |value| < high"""

    def rule(_: np.ndarray, values: np.ndarray) -> np.ndarray:
        magnitude = np.abs(values)
        return (magnitude > low) & (magnitude < high)

    return rule


def time_band(start: float, stop: float = np.inf) -> WindowRule:
    def rule(times: np.ndarray, _: np.ndarray) -> np.ndarray:
        return (times >= start) & (times <= stop)

    return rule


def fit_exponential(
    times: Sequence[float],
    values: Sequence[float],
    window: Optional[WindowRule] = None,
) -> FitResult:
    """Least-squares slope of log|value| against t over the window.

    Returns a FitResult; raises ExperimentInconclusiveError when the window
    holds fewer than 10 points or the values change sign inside it.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.shape != values.shape:
        raise ExperimentInconclusiveError("time and value series differ in length")
    mask = np.isfinite(times) & np.isfinite(values) & (values != 0.0)
    if window is not None:
        mask &= window(times, values)
    selected_t, selected_v = times[mask], values[mask]
    if selected_t.size < MIN_FIT_POINTS:
        raise ExperimentInconclusiveError(
            f"fit window holds {selected_t.size} points, need at least {MIN_FIT_POINTS}"
        )
    if not (np.all(selected_v > 0.0) or np.all(selected_v < 0.0)):
        raise ExperimentInconclusiveError("values change sign inside the fit window")

    fit = stats.linregress(selected_t, np.log(np.abs(selected_v)))
    window_span: Tuple[float, float] = (float(selected_t[0]), float(selected_t[-1]))
    logger.debug(f"fitted rate {fit.slope!r} over t ∈ {window_span} ({selected_t.size} points)")
    return FitResult(
        rate=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue ** 2),
        window=window_span,
        points=int(selected_t.size),
    )
