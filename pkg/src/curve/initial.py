"""
初始曲线构造
"""
import logging
import math
from enum import Enum
from typing import Any, Dict, Mapping, Union

import numpy as np

from ..exceptions import DomainError, ParameterError
from ..surface import SurfaceProfile
from .constants import MIN_SAMPLES
from .discrete import TWO_PI, DiscreteCurve, RadialGraph

logger = logging.getLogger(__name__)


class CurveKind(str, Enum):
    """初始曲线类型"""
    CIRCLE = "circle"
    PERTURBED_CIRCLE = "perturbed_circle"
    FOURIER_GRAPH = "fourier_graph"
    CHART_ELLIPSE = "chart_ellipse"


def _harmonics(values: Mapping[Any, float]) -> Dict[int, float]:
    result = {}
    for key, value in (values or {}).items():
        mode = int(key)
        if mode < 1:
            raise ParameterError(f"Fourier mode must be >= 1, got {key!r}")
        result[mode] = float(value)
    return result


def _graph(surface: SurfaceProfile, r: np.ndarray) -> RadialGraph:
    try:
        return RadialGraph(surface, r)
    except DomainError as e:
        raise ParameterError(f"initial curve leaves the annulus: {e}") from e


def initial_curve(
    surface: SurfaceProfile,
    kind: Union[CurveKind, str],
    params: Mapping[str, Any],
    n: int,
) -> Union[RadialGraph, DiscreteCurve]:
    """Build an initial curve with n samples.

    circle:           radius
    perturbed_circle: radius, mode, amplitude           r(u) = radius + amplitude·cos(mode·u)
    fourier_graph:    c0, cos {k: c_k}, sin {k: s_k}    r(u) = c0 + Σ c_k cos ku + s_k sin ku
    chart_ellipse:    semi_axes (sa, sb), center (cx, cy), rotation
    """
    kind = CurveKind(kind)
    if n < MIN_SAMPLES:
        raise ParameterError(f"resolution must be at least {MIN_SAMPLES}, got {n}")
    u = TWO_PI / n * np.arange(n)

    if kind == CurveKind.CIRCLE:
        return _graph(surface, np.full(n, float(params["radius"])))

    if kind == CurveKind.PERTURBED_CIRCLE:
        mode = int(params["mode"])
        if mode < 1:
            raise ParameterError(f"perturbation mode must be >= 1, got {mode}")
        radius = float(params["radius"])
        amplitude = float(params["amplitude"])
        return _graph(surface, radius + amplitude * np.cos(mode * u))

    if kind == CurveKind.FOURIER_GRAPH:
        r = np.full(n, float(params["c0"]))
        for mode, value in _harmonics(params.get("cos", {})).items():
            r += value * np.cos(mode * u)
        for mode, value in _harmonics(params.get("sin", {})).items():
            r += value * np.sin(mode * u)
        return _graph(surface, r)

    semi_a, semi_b = (float(v) for v in params["semi_axes"])
    if not (semi_a > 0.0 and semi_b > 0.0):
        raise ParameterError("ellipse semi-axes must be positive")
    cx, cy = (float(v) for v in params.get("center", (0.0, 0.0)))
    rotation = float(params.get("rotation", 0.0))
    ex, ey = semi_a * np.cos(u), semi_b * np.sin(u)
    x = cx + ex * math.cos(rotation) - ey * math.sin(rotation)
    y = cy + ex * math.sin(rotation) + ey * math.cos(rotation)
    try:
        return DiscreteCurve(surface, np.hypot(x, y), np.arctan2(y, x))
    except DomainError as e:
        raise ParameterError(f"initial curve leaves the annulus: {e}") from e
