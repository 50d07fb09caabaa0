"""
曲线间距离与曲率演化残差
"""
import logging

import numpy as np
from scipy.spatial import cKDTree

from ..curve import CurveLike, DiscreteCurve, as_curve, chart_xy
from ..exceptions import ParameterError
from ..surface import SurfaceProfile
from ..utils.stencils import periodic_d1, periodic_d2

logger = logging.getLogger(__name__)

DENSIFY = 16


def _densified(curve: CurveLike, factor: int) -> np.ndarray:
    x, y = chart_xy(curve)
    points = np.column_stack([x, y])
    following = np.roll(points, -1, axis=0)
    weights = np.arange(factor)[:, None, None] / factor
    dense = points[None, :, :] * (1.0 - weights) + following[None, :, :] * weights
    return dense.transpose(1, 0, 2).reshape(-1, 2)


def _one_sided(source: np.ndarray, target: np.ndarray, tree: cKDTree) -> float:
    """max over source points of the distance to the closed polygon through target"""
    _, nearest = tree.query(source)
    count = target.shape[0]
    best = np.full(source.shape[0], np.inf)
    for offset in (-1, 0):
        start = target[(nearest + offset) % count]
        end = target[(nearest + offset + 1) % count]
        segment = end - start
        length2 = np.einsum("ij,ij->i", segment, segment)
        safe = np.where(length2 > 0.0, length2, 1.0)
        weight = np.clip(np.einsum("ij,ij->i", source - start, segment) / safe, 0.0, 1.0)
        closest = start + weight[:, None] * segment
        best = np.minimum(best, np.hypot(*(source - closest).T))
    return float(np.max(best))


def chart_hausdorff(first: CurveLike, second: CurveLike, densify: int = DENSIFY) -> float:
    """Hausdorff distance of two closed curves in the chart plane (x, y) = r·(cos u, sin u)"""
    if densify < 1:
        raise ParameterError("densification factor must be >= 1")
    a = _densified(first, densify)
    b = _densified(second, densify)
    forward = _one_sided(a, b, cKDTree(b))
    backward = _one_sided(b, a, cKDTree(a))
    return max(forward, backward)


def curvature_evolution_residual(
    surface: SurfaceProfile,
    previous: CurveLike,
    current: CurveLike,
    following: CurveLike,
    dt: float,
    h: float,
) -> float:
    """max |(κ⁺ − κ⁻)/(2dt) − [∂²ₛκ − (h − κ)(𝒦 + κ²)]| at the middle snapshot.

    The three curves must share the parametrization (no redistribution in
    between) and be separated by dt.
    """
    previous, current, following = (as_curve(c) for c in (previous, current, following))
    if not previous.n == current.n == following.n:
        raise ParameterError("residual needs curves with the same resolution")
    if not dt > 0.0:
        raise ParameterError("dt must be positive")
    kappa = current.kappa
    rate = (following.kappa - previous.kappa) / (2.0 * dt)
    speed = current.speed
    d_kappa = periodic_d1(kappa, current.dp)
    d_speed = periodic_d1(speed, current.dp)
    kappa_ss = periodic_d2(kappa, current.dp) / speed ** 2 - d_speed * d_kappa / speed ** 3
    curvature = surface.gauss_curvature(current.r)
    model = kappa_ss - (h - kappa) * (curvature + kappa * kappa)
    return float(np.max(np.abs(rate - model)))


def kappa_statistics(curve: DiscreteCurve, h: float):
    """(κ_min, κ_max, sup|κ − h|, ∮(κ − h)² ds)"""
    kappa = curve.kappa
    deviation = kappa - h
    return (
        float(np.min(kappa)),
        float(np.max(kappa)),
        float(np.max(np.abs(deviation))),
        float(np.sum(deviation * deviation * curve.ds)),
    )
