"""Radial Gauss-curvature families used to build pinched profiles"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from ..exceptions import ParameterError


@dataclass(frozen=True)
class CurvatureFamily(ABC):
    """𝒦(r) for a radially symmetric metric, even in r near the pole.

    Subclasses provide the curvature, its radial derivative and the first
    two Taylor coefficients 𝒦(r) = k0 + k2·r² + O(r⁴).
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.c > 0):
            raise ParameterError(
                f"pinching constants must be positive, got a={self.a!r}, b={self.b!r}, c={self.c!r}"
            )
        if self.b < self.a:
            raise ParameterError(f"pinching requires a <= b, got a={self.a!r}, b={self.b!r}")

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def curvature(self, r):
        pass

    @abstractmethod
    def derivative(self, r):
        pass

    @property
    def k0(self) -> float:
        return -self.a ** 2

    @property
    def k2(self) -> float:
        return -(self.b ** 2 - self.a ** 2) * self.c


class TanhPinch(CurvatureFamily):
    """𝒦(r) = −a² − (b²−a²)·tanh(c r²)"""

    @property
    def name(self) -> str:
        return "tanh_pinch"

    def curvature(self, r):
        r = np.asarray(r, dtype=float)
        return -self.a ** 2 - (self.b ** 2 - self.a ** 2) * np.tanh(self.c * r * r)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        sech = 1.0 / np.cosh(np.minimum(self.c * r * r, 350.0))
        return -(self.b ** 2 - self.a ** 2) * 2.0 * self.c * r * sech * sech


class RationalPinch(CurvatureFamily):
    """𝒦(r) = −(a² + b² c r²)/(1 + c r²)"""

    @property
    def name(self) -> str:
        return "rational_pinch"

    def curvature(self, r):
        r = np.asarray(r, dtype=float)
        cr2 = self.c * r * r
        return -(self.a ** 2 + self.b ** 2 * cr2) / (1.0 + cr2)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        cr2 = self.c * r * r
        return -2.0 * self.c * r * (self.b ** 2 - self.a ** 2) / (1.0 + cr2) ** 2


CURVATURE_FAMILIES = {
    "tanh_pinch": TanhPinch,
    "rational_pinch": RationalPinch,
}


def get_curvature_family(name: str, a: float, b: float, c: float) -> CurvatureFamily:
    """按名称构造曲率族"""
    try:
        family_cls = CURVATURE_FAMILIES[name]
    except KeyError:
        raise ParameterError(
            f"unknown curvature family '{name}', expected one of {sorted(CURVATURE_FAMILIES)}"
        )
    return family_cls(a=float(a), b=float(b), c=float(c))
