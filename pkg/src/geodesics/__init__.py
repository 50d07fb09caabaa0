"""
测地线模块

测地距离、径向梯度、测地线积分、支撑函数与内切/外接半径。
"""
from .types import (
    POLE,
    ChartPoint,
    GeodesicArc,
    GeodesicSolution,
    Location,
    Pole,
    location_from_dict,
    location_from_xy,
)
from .distance import distance, radial_gradient, radial_gradients, solve_geodesics, wrap_angle
from .shooting import jacobi_curvatures, shoot
from .support import SupportWeight, radial_normal_products, support_function
from .radii import RadiiResult, SearchSettings, inradius_outradius

__all__ = [
    "POLE",
    "ChartPoint",
    "GeodesicArc",
    "GeodesicSolution",
    "Location",
    "Pole",
    "location_from_dict",
    "location_from_xy",
    "distance",
    "radial_gradient",
    "radial_gradients",
    "solve_geodesics",
    "wrap_angle",
    "shoot",
    "jacobi_curvatures",
    "SupportWeight",
    "radial_normal_products",
    "support_function",
    "RadiiResult",
    "SearchSettings",
    "inradius_outradius",
]
