"""Support function of a curve with respect to an interior point"""

import logging
from enum import Enum
from typing import Union

import numpy as np

from ..curve import CurveLike, as_curve, winding_number
from ..exceptions import PreconditionError
from ..surface import SurfaceProfile
from .distance import radial_gradients
from .types import Location

logger = logging.getLogger(__name__)


class SupportWeight(str, Enum):
    """sinh(r) 为双曲空间记法；phi 为按翘曲函数缩放的变体"""
    SINH = "sinh"
    PHI = "phi"


def radial_normal_products(surface: SurfaceProfile, p0: Location, curve: CurveLike):
    """(⟨∂r, N⟩, ⟨∂r, T⟩, dist(p0, ·)) at every sample; p0 must be enclosed."""
    curve = as_curve(curve)
    if winding_number(curve, p0) == 0:
        raise PreconditionError(f"point {p0!r} is not enclosed by the curve")
    grad_r, grad_u, solution = radial_gradients(surface, p0, curve.r, curve.u)
    gradient = (grad_r, grad_u)
    normal = curve.inner(gradient, curve.normal) * curve.orientation
    tangent = curve.inner(gradient, curve.tangent) * curve.orientation
    return normal, tangent, solution.distance


def support_function(
    surface: SurfaceProfile,
    p0: Location,
    curve: CurveLike,
    weight: Union[SupportWeight, str] = SupportWeight.SINH,
) -> np.ndarray:
    """u = w(r_{p0})·⟨∂r, N⟩ per sample, with w = sinh or φ."""
    weight = SupportWeight(weight)
    normal, _, dist = radial_normal_products(surface, p0, curve)
    if weight == SupportWeight.SINH:
        return np.sinh(dist) * normal
    return surface.phi(np.minimum(dist, surface.r_max)) * normal
