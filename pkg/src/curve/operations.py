"""
曲线几何操作：几何量、长度面积、弧长重分布、嵌入性与卷绕数
"""
import logging
import math
from typing import TYPE_CHECKING, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline

from ..exceptions import NumericalDegeneracyError
from ..surface import SurfaceProfile
from .constants import REDISTRIBUTE_MAX_NEWTON, REDISTRIBUTE_TOLERANCE
from .discrete import TWO_PI, DiscreteCurve, RadialGraph

if TYPE_CHECKING:
    from ..geodesics.types import Location

logger = logging.getLogger(__name__)

CurveLike = Union[DiscreteCurve, RadialGraph]


def as_curve(curve: CurveLike) -> DiscreteCurve:
    return curve.to_curve() if isinstance(curve, RadialGraph) else curve


def _on_surface(surface: SurfaceProfile, curve: CurveLike) -> DiscreteCurve:
    curve = as_curve(curve)
    if curve.surface is surface:
        return curve
    return DiscreteCurve(surface, curve.r, curve.u_lifted)


# ========== 几何量 ==========

def geometry(surface: SurfaceProfile, curve: CurveLike) -> DiscreteCurve:
    """Curve with populated geometry caches on the given surface"""
    curve = _on_surface(surface, curve)
    _ = (curve.ds, curve.tangent, curve.normal)
    return curve


def length_area(surface: SurfaceProfile, curve: CurveLike) -> Tuple[float, float]:
    """(L, A) by periodic trapezoidal quadrature; A is signed."""
    curve = _on_surface(surface, curve)
    return curve.length, curve.area


def gauss_bonnet_residual(surface: SurfaceProfile, curve: CurveLike) -> float:
    return _on_surface(surface, curve).gauss_bonnet_residual


def is_convex(surface: SurfaceProfile, curve: CurveLike) -> bool:
    """Strict convexity: κ > 0 everywhere with respect to the curve's own orientation"""
    curve = _on_surface(surface, curve)
    return bool(np.all(curve.orientation * curve.kappa > 0.0))


# ========== 弧长重分布 ==========

def _arclength_series(speed: np.ndarray):
    """Spectral primitive s(p) = ∫₀ᵖ v of the periodic speed samples."""
    n = speed.size
    coefficients = np.fft.rfft(speed) / n
    mean = float(coefficients[0].real)
    k = np.arange(1, coefficients.size)
    tail = coefficients[1:].copy()
    if n % 2 == 0:
        tail[-1] = 0.0

    def primitive(p: np.ndarray) -> np.ndarray:
        phase = np.exp(1j * np.outer(p, k))
        return mean * p + 2.0 * np.real((phase - 1.0) @ (tail / (1j * k)))

    def derivative(p: np.ndarray) -> np.ndarray:
        phase = np.exp(1j * np.outer(p, k))
        return mean + 2.0 * np.real(phase @ tail)

    return primitive, derivative, mean * TWO_PI


def redistribute(curve: DiscreteCurve) -> DiscreteCurve:
    """Reposition samples at uniform arclength; the first sample stays fixed."""
    n = curve.n
    grid = curve.dp * np.arange(n)
    primitive, derivative, total = _arclength_series(curve.speed)
    targets = total / n * np.arange(n)

    p = grid + (targets - primitive(grid)) / curve.speed
    for _ in range(REDISTRIBUTE_MAX_NEWTON):
        slope = derivative(p)
        if np.any(slope <= 0.0):
            raise NumericalDegeneracyError("arclength is not monotone in the parameter")
        correction = (primitive(p) - targets) / slope
        p = p - correction
        if float(np.max(np.abs(correction))) * float(np.max(slope)) < REDISTRIBUTE_TOLERANCE * total:
            break
    if np.any(np.diff(p) <= 0.0) or p[-1] >= TWO_PI:
        raise NumericalDegeneracyError("redistributed parameters are not increasing")

    closed = np.append(grid, TWO_PI)
    r_spline = CubicSpline(closed, np.append(curve.r, curve.r[0]), bc_type="periodic")
    u_spline = CubicSpline(
        closed, np.append(curve.u_periodic, curve.u_periodic[0]), bc_type="periodic"
    )
    r_new = r_spline(p)
    u_new = u_spline(p) + curve.winding * p
    if not (np.all(np.isfinite(r_new)) and np.all(np.isfinite(u_new))):
        raise NumericalDegeneracyError("interpolation produced non-finite samples")
    return curve.with_samples(r_new, u_new)


# ========== 图坐标、卷绕数与嵌入性 ==========

def chart_xy(curve: CurveLike) -> Tuple[np.ndarray, np.ndarray]:
    """Chart rendering coordinates (r cos u, r sin u); not an isometry."""
    curve = as_curve(curve)
    return curve.r * np.cos(curve.u_lifted), curve.r * np.sin(curve.u_lifted)


def winding_number(curve: CurveLike, point: "Location") -> int:
    """Winding number of the chart polygon about a point"""
    x, y = chart_xy(curve)
    px, py = point.to_xy()
    angles = np.arctan2(y - py, x - px)
    steps = np.diff(np.append(angles, angles[0]))
    steps = (steps + math.pi) % TWO_PI - math.pi
    return int(round(float(np.sum(steps)) / TWO_PI))


def is_embedded(curve: CurveLike) -> bool:
    """No two non-adjacent chart segments intersect"""
    x, y = chart_xy(curve)
    n = x.size
    x2, y2 = np.roll(x, -1), np.roll(y, -1)
    dx, dy = x2 - x, y2 - y

    def orient(ax, ay, bx, by, cx, cy):
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)

    i, j = np.triu_indices(n, k=2)
    keep = ~((i == 0) & (j == n - 1))
    i, j = i[keep], j[keep]
    d1 = orient(x[i], y[i], x2[i], y2[i], x[j], y[j])
    d2 = orient(x[i], y[i], x2[i], y2[i], x2[j], y2[j])
    d3 = orient(x[j], y[j], x2[j], y2[j], x[i], y[i])
    d4 = orient(x[j], y[j], x2[j], y2[j], x2[i], y2[i])
    crossing = (d1 * d2 < 0.0) & (d3 * d4 < 0.0)
    if np.any(crossing):
        k = int(np.flatnonzero(crossing)[0])
        logger.debug(f"segments {int(i[k])} and {int(j[k])} intersect")
        return False
    return bool(np.all(dx * dx + dy * dy > 0.0))
