"""
曲线模块

极坐标图中的离散闭曲线、几何量与弧长重分布。
"""
from .discrete import DiscreteCurve, RadialGraph
from .initial import CurveKind, initial_curve
from .operations import (
    CurveLike,
    as_curve,
    chart_xy,
    gauss_bonnet_residual,
    geometry,
    is_convex,
    is_embedded,
    length_area,
    redistribute,
    winding_number,
)

__all__ = [
    "DiscreteCurve",
    "RadialGraph",
    "CurveKind",
    "CurveLike",
    "initial_curve",
    "as_curve",
    "geometry",
    "length_area",
    "gauss_bonnet_residual",
    "is_convex",
    "redistribute",
    "chart_xy",
    "winding_number",
    "is_embedded",
]
