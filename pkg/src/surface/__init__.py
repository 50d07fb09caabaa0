"""
曲面模块

旋转对称 pinched Hadamard 曲面：翘曲函数、曲率、ψ、模型圆盘公式。
"""
from .profile import (
    SurfaceFamily,
    SurfaceProfile,
    ConstantCurvatureProfile,
    TabulatedProfile,
)
from .families import CurvatureFamily, TanhPinch, RationalPinch, get_curvature_family
from .builders import (
    InvariantCheck,
    build_constant_curvature,
    build_from_curvature,
    build_tabulated,
    verify_invariants,
)
from .model import geodesic_circle_curvature, model_disk, isoperimetric_deficit, predicted_rate

__all__ = [
    "SurfaceFamily",
    "SurfaceProfile",
    "ConstantCurvatureProfile",
    "TabulatedProfile",
    "CurvatureFamily",
    "TanhPinch",
    "RationalPinch",
    "get_curvature_family",
    "InvariantCheck",
    "build_constant_curvature",
    "build_from_curvature",
    "build_tabulated",
    "verify_invariants",
    "geodesic_circle_curvature",
    "model_disk",
    "isoperimetric_deficit",
    "predicted_rate",
]
