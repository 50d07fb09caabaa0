"""
由初始长度、面积推出的几何界

r₁   = (2/a)·acoth((L₀ + √Δ₀)/(A₀a))          内切半径下界
r₂   = L₀                                     外接半径上界
τ    = (1/b²)·ln(cosh(b r₁)/cosh(b r₁/2))     内切球心保持距离 ≥ r₁/2 的时间
2c   = sinh(r₁/2)·ε₀/(b·coth(b r₁/2))         支撑函数下界
"""
import math
from dataclasses import dataclass
from typing import Dict

from ..exceptions import DomainError, ParameterError
from ..surface import SurfaceProfile, isoperimetric_deficit

DEFICIT_ROUNDOFF = 1e-13


def acoth(x: float) -> float:
    if not x > 1.0:
        raise DomainError(f"acoth requires an argument > 1, got {x!r}")
    return 0.5 * math.log((x + 1.0) / (x - 1.0))


def coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def _check_initial(length: float, area: float) -> None:
    if not (length > 0.0 and area > 0.0):
        raise ParameterError(f"initial length and area must be positive, got L={length!r}, A={area!r}")


def inner_radius_lower_bound(a: float, length: float, area: float) -> float:
    """r₁ from the initial length, area and deficit"""
    _check_initial(length, area)
    deficit = isoperimetric_deficit(length, area, a)
    # 舍入噪声量级的亏量按 0 处理
    if deficit < DEFICIT_ROUNDOFF * length * length:
        deficit = 0.0
    return 2.0 / a * acoth((length + math.sqrt(deficit)) / (area * a))


@dataclass
class EscapeCondition:
    """A₀ ≤ (2π/b²)(cosh(b·r₁) − 1): sufficient for the flow to stay bounded"""
    satisfied: bool
    margin: float
    rhs: float
    area: float
    r1: float

    def to_dict(self) -> Dict:
        return {
            "satisfied": self.satisfied,
            "margin": self.margin,
            "rhs": self.rhs,
            "A0": self.area,
            "r1": self.r1,
        }


def check_escape_condition(surface: SurfaceProfile, length: float, area: float,
                           tolerance: float = 1e-12) -> EscapeCondition:
    """Evaluate both sides of the non-escape criterion; margin = RHS − A₀."""
    _check_initial(length, area)
    if length < surface.a * area * (1.0 - 1e-12):
        raise DomainError(f"L₀ = {length!r} < a·A₀ = {surface.a * area!r}")
    r1 = inner_radius_lower_bound(surface.a, length, area)
    b = surface.b
    rhs = 2.0 * math.pi / (b * b) * (math.cosh(b * r1) - 1.0)
    margin = rhs - area
    return EscapeCondition(margin >= -tolerance * area, margin, rhs, area, r1)


def persistence_time(surface: SurfaceProfile, length: float, area: float) -> float:
    """τ during which the initial inball center stays r₁/2 away from the curve"""
    r1 = inner_radius_lower_bound(surface.a, length, area)
    b = surface.b
    return (math.log(math.cosh(b * r1)) - math.log(math.cosh(0.5 * b * r1))) / (b * b)


def barrier_radius(b: float, rho_minus: float, elapsed: float) -> float:
    """R(t) with cosh(b R) = e^{−b²(t−t₀)} cosh(b ρ₋(t₀)); 0 once the ball has collapsed"""
    value = math.exp(-b * b * elapsed) * math.cosh(b * rho_minus)
    return math.acosh(value) / b if value > 1.0 else 0.0


def support_lower_bound(surface: SurfaceProfile, length: float, area: float, epsilon0: float) -> float:
    """2c = sinh(r₁/2)·ε₀/(b·coth(b r₁/2))"""
    if not epsilon0 > 0.0:
        raise ParameterError(f"ε₀ must be positive, got {epsilon0!r}")
    r1 = inner_radius_lower_bound(surface.a, length, area)
    b = surface.b
    return math.sinh(0.5 * r1) * epsilon0 / (b * coth(0.5 * b * r1))


def osserman_gap(a: float, length: float, area: float, rho_minus: float) -> float:
    """(L − A·a·coth(aρ₋/2))², bounded above by Δ"""
    return (length - area * a * coth(0.5 * a * rho_minus)) ** 2
