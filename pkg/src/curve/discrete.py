"""
离散闭曲线

DiscreteCurve - 参数 p_j = 2πj/N 上的采样 (r_j, u_j)，构造时计算全部几何量
RadialGraph   - 均匀角网格上的径向图 r_j = r(u_j)

角度 u 内部按单调提升存储：u = w·p + ũ，w 为绕极点的卷绕数，ũ 周期。
"""
import logging
import math
from functools import cached_property
from typing import Tuple

import numpy as np

from ..exceptions import DomainError, NumericalDegeneracyError, ParameterError
from ..surface import SurfaceProfile
from ..utils.stencils import periodic_d1, periodic_d2
from .constants import DEGENERATE_SPEED, MIN_SAMPLES

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def _validate_radii(surface: SurfaceProfile, r: np.ndarray) -> None:
    if r.ndim != 1 or r.size < MIN_SAMPLES:
        raise ParameterError(f"a closed curve needs at least {MIN_SAMPLES} samples, got {r.size}")
    if not np.all(np.isfinite(r)):
        raise DomainError("curve radii must be finite")
    low, high = float(np.min(r)), float(np.max(r))
    if low <= surface.grid_step or high > surface.r_max:
        raise DomainError(
            f"curve radii [{low!r}, {high!r}] leave the annulus "
            f"({surface.grid_step!r}, {surface.r_max!r}]"
        )


def _chart_shoelace(r: np.ndarray, u: np.ndarray) -> float:
    x, y = r * np.cos(u), r * np.sin(u)
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


class DiscreteCurve:
    """Closed curve sampled at N parameter values, with cached geometry.

    Per-sample vectors are (r, u) coordinate components in the metric
    dr² + φ²du². N is the right-hand normal (φu̇/v, −ṙ/(φv)), which equals ∂r
    for a counterclockwise circle about the pole; κ is positive there.
    """

    def __init__(self, surface: SurfaceProfile, r, u):
        r = np.array(r, dtype=float)
        u = np.array(u, dtype=float)
        if r.shape != u.shape:
            raise ParameterError("radius and angle samples differ in length")
        _validate_radii(surface, r)
        if not np.all(np.isfinite(u)):
            raise DomainError("curve angles must be finite")

        self._surface = surface
        n = r.size
        self._dp = TWO_PI / n
        lifted = np.unwrap(u)
        closing = lifted[-1] + math.remainder(u[0] - u[-1], TWO_PI) - lifted[0]
        self._winding = int(round(closing / TWO_PI))
        self._r = r
        self._u_periodic = lifted - self._winding * self._dp * np.arange(n)

        self._r_p = periodic_d1(r, self._dp)
        self._u_p = self._winding + periodic_d1(self._u_periodic, self._dp)
        self._r_pp = periodic_d2(r, self._dp)
        self._u_pp = periodic_d2(self._u_periodic, self._dp)

        self._phi = surface.phi(r)
        self._dphi = surface.dphi(r)
        speed2 = self._r_p ** 2 + (self._phi * self._u_p) ** 2
        self._speed = np.sqrt(speed2)
        if float(np.min(self._speed)) < DEGENERATE_SPEED:
            j = int(np.argmin(self._speed))
            raise NumericalDegeneracyError(f"degenerate parametrization at sample {j}")

        v3 = self._speed ** 3
        self._kappa = (
            self._phi * (self._r_p * self._u_pp - self._u_p * self._r_pp)
            + self._phi ** 2 * self._dphi * self._u_p ** 3
            + 2.0 * self._dphi * self._r_p ** 2 * self._u_p
        ) / v3
        self._orientation = 1 if _chart_shoelace(r, lifted) >= 0.0 else -1

    # ========== 采样 ==========

    @property
    def surface(self) -> SurfaceProfile:
        return self._surface

    @property
    def n(self) -> int:
        return self._r.size

    @property
    def dp(self) -> float:
        return self._dp

    @property
    def r(self) -> np.ndarray:
        return self._r

    @cached_property
    def u_lifted(self) -> np.ndarray:
        return self._u_periodic + self._winding * self._dp * np.arange(self.n)

    @property
    def u(self) -> np.ndarray:
        """Angles reduced to [0, 2π)"""
        return np.mod(self.u_lifted, TWO_PI)

    @property
    def u_periodic(self) -> np.ndarray:
        return self._u_periodic

    @property
    def winding(self) -> int:
        """Winding number about the pole (0 when the pole is outside)"""
        return self._winding

    @property
    def orientation(self) -> int:
        """+1 counterclockwise, −1 clockwise"""
        return self._orientation

    # ========== 几何量 ==========

    @property
    def phi(self) -> np.ndarray:
        return self._phi

    @property
    def dphi(self) -> np.ndarray:
        return self._dphi

    @property
    def velocity(self) -> Tuple[np.ndarray, np.ndarray]:
        """(ṙ, u̇) with respect to the parameter"""
        return self._r_p, self._u_p

    @property
    def speed(self) -> np.ndarray:
        return self._speed

    @property
    def kappa(self) -> np.ndarray:
        return self._kappa

    @cached_property
    def ds(self) -> np.ndarray:
        return self._speed * self._dp

    @cached_property
    def tangent(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._r_p / self._speed, self._u_p / self._speed

    @cached_property
    def normal(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._phi * self._u_p / self._speed, -self._r_p / (self._phi * self._speed)

    def inner(self, first: Tuple[np.ndarray, np.ndarray], second: Tuple[np.ndarray, np.ndarray]) -> np.ndarray:
        """Pointwise metric product of two per-sample vector fields"""
        return first[0] * second[0] + self._phi ** 2 * first[1] * second[1]

    @cached_property
    def length(self) -> float:
        return float(np.sum(self.ds))

    @cached_property
    def area(self) -> float:
        """Signed enclosed area ∮Φ(r) du"""
        return float(np.sum(self._surface.area_primitive(self._r) * self._u_p) * self._dp)

    @cached_property
    def gauss_bonnet_residual(self) -> float:
        """∮κ ds − 2π·orientation + ∫_Ω 𝒦 dA"""
        total_curvature = float(np.sum(self._kappa * self.ds))
        enclosed = float(np.sum(self._surface.curvature_primitive(self._r) * self._u_p) * self._dp)
        return total_curvature - TWO_PI * self._orientation + enclosed

    def reversed(self) -> "DiscreteCurve":
        """Same point set traversed the other way, starting at the same sample"""
        index = (-np.arange(self.n)) % self.n
        return DiscreteCurve(self._surface, self._r[index], self.u_lifted[index])

    def with_samples(self, r, u) -> "DiscreteCurve":
        return DiscreteCurve(self._surface, r, u)

    def __repr__(self) -> str:
        return (
            f"DiscreteCurve(n={self.n}, winding={self._winding}, "
            f"orientation={self._orientation}, L={self.length:.6g})"
        )


class RadialGraph:
    """Star-shaped curve r = r(u) on the uniform grid u_j = 2πj/N"""

    def __init__(self, surface: SurfaceProfile, r):
        r = np.array(r, dtype=float)
        _validate_radii(surface, r)
        self._surface = surface
        self._r = r
        self._du = TWO_PI / r.size
        self._dr = periodic_d1(r, self._du)
        self._ddr = periodic_d2(r, self._du)
        self._phi = surface.phi(r)
        self._dphi = surface.dphi(r)
        self._speed = np.sqrt(self._dr ** 2 + self._phi ** 2)

    @property
    def surface(self) -> SurfaceProfile:
        return self._surface

    @property
    def n(self) -> int:
        return self._r.size

    @property
    def du(self) -> float:
        return self._du

    @property
    def r(self) -> np.ndarray:
        return self._r

    @property
    def u(self) -> np.ndarray:
        return self._du * np.arange(self.n)

    @property
    def dr(self) -> np.ndarray:
        return self._dr

    @property
    def ddr(self) -> np.ndarray:
        return self._ddr

    @property
    def phi(self) -> np.ndarray:
        return self._phi

    @property
    def dphi(self) -> np.ndarray:
        return self._dphi

    @property
    def speed(self) -> np.ndarray:
        """v(r) = √((∂ᵤr)² + φ(r)²)"""
        return self._speed

    @cached_property
    def kappa(self) -> np.ndarray:
        """κ = −(φ/v³)∂²ᵤr + (φ'/v)(1 + (∂ᵤr)²/v²)"""
        v = self._speed
        return -self._phi * self._ddr / v ** 3 + self._dphi / v * (1.0 + self._dr ** 2 / v ** 2)

    @cached_property
    def ds(self) -> np.ndarray:
        return self._speed * self._du

    @property
    def mean_radius(self) -> float:
        return float(np.mean(self._r))

    def mode_amplitude(self, mode: int) -> float:
        """(1/π)∮(r − r̄) cos(iu) du"""
        deviation = self._r - np.mean(self._r)
        return float(2.0 / self.n * np.sum(deviation * np.cos(mode * self.u)))

    def to_curve(self) -> DiscreteCurve:
        return DiscreteCurve(self._surface, self._r, self.u)

    @classmethod
    def from_curve(cls, curve: DiscreteCurve, tolerance: float = 1e-12) -> "RadialGraph":
        """Inverse of to_curve for curves sampled on the uniform angle grid"""
        grid = TWO_PI / curve.n * np.arange(curve.n)
        if curve.winding != 1 or np.max(np.abs(curve.u_lifted - curve.u_lifted[0] - grid)) > tolerance:
            raise ParameterError("curve is not sampled on a uniform angle grid")
        shift = float(curve.u_lifted[0])
        if abs(math.remainder(shift, TWO_PI)) > tolerance:
            raise ParameterError("radial graph samples must start at u = 0")
        return cls(curve.surface, curve.r)

    def __repr__(self) -> str:
        return f"RadialGraph(n={self.n}, mean_radius={self.mean_radius:.6g})"
