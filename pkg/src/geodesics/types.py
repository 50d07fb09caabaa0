"""
测地线模块数据类型定义

ChartPoint - 极坐标 (r, u) 中的点，r > 0
Pole       - 极点的标签值（不用 r=0 表示，避免坐标奇点）
GeodesicArc / GeodesicSolution
"""
import math
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from ..exceptions import ParameterError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ChartPoint:
    """Point in geodesic polar coordinates about the pole"""
    r: float
    u: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0.0):
            raise ParameterError(f"ChartPoint requires r > 0, got {self.r!r}; use POLE for the pole")
        if not math.isfinite(self.u):
            raise ParameterError(f"ChartPoint angle must be finite, got {self.u!r}")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "u", float(self.u) % TWO_PI)

    def to_xy(self) -> Tuple[float, float]:
        """Chart rendering coordinates (r cos u, r sin u)"""
        return self.r * math.cos(self.u), self.r * math.sin(self.u)

    def to_dict(self) -> dict:
        return {"r": self.r, "u": self.u}


class Pole:
    """The pole of the rotationally symmetric chart"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    r = 0.0

    def to_xy(self) -> Tuple[float, float]:
        return 0.0, 0.0

    def to_dict(self) -> dict:
        return {"pole": True}

    def __repr__(self) -> str:
        return "POLE"

    def __reduce__(self):
        return (Pole, ())


POLE = Pole()

Location = Union[ChartPoint, Pole]


def location_from_xy(x: float, y: float, floor: float = 1e-12) -> Location:
    """Chart (x, y) back to a location; radii below floor collapse to the pole."""
    r = math.hypot(x, y)
    if r < floor:
        return POLE
    return ChartPoint(r, math.atan2(y, x))


def location_from_dict(data: dict) -> Location:
    if data.get("pole"):
        return POLE
    return ChartPoint(float(data["r"]), float(data["u"]))


@dataclass(frozen=True)
class GeodesicArc:
    """Sampled unit-speed geodesic.

    velocities are coordinate components (r', u') in the metric dr² + φ²du².
    """
    start: Location
    direction: Tuple[float, float]
    length: float
    arclength: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    dr: np.ndarray = field(repr=False)
    du: np.ndarray = field(repr=False)

    @property
    def end(self) -> Location:
        if self.r[-1] <= 0.0:
            return POLE
        return ChartPoint(float(self.r[-1]), float(self.u[-1]))

    def speed(self, phi: np.ndarray) -> np.ndarray:
        """g-norm of the velocity given φ(r) at the samples"""
        return np.sqrt(self.dr ** 2 + (phi * self.du) ** 2)

    def clairaut(self, phi: np.ndarray) -> np.ndarray:
        """φ(r)²·u' at the samples"""
        return phi * phi * self.du


@dataclass(frozen=True)
class GeodesicSolution:
    """Minimizing geodesics from one base point to many targets.

    clairaut is the signed constant φ²u' along each geodesic oriented from the
    base point to the target; departure_dr / arrival_dr are the r-components
    of the unit velocity at either end.
    """
    distance: np.ndarray
    clairaut: np.ndarray
    departure_dr: np.ndarray
    arrival_dr: np.ndarray
    target_r: np.ndarray
    target_u: np.ndarray
    iterations: int = 0
