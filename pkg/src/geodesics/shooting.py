"""
测地线初值问题

在光滑图 (x, y) = r·(cos u, sin u) 中积分测地线方程，极点处无奇点：
    a = g1·(x v_y − y v_x)²/r² · (x, y) + 2·g2·(x v_x + y v_y)(x v_y − y v_x)/r² · (−y, x)
其中 g1、g2 由 SurfaceProfile.chart_acceleration_terms 给出。
Jacobi 场 J'' = −𝒦 J 与测地线一起积分，用于给出测地圆曲率 κ° = J'/J。
"""
import logging
import math
from typing import Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..exceptions import DomainError, GeodesicRangeError, InternalSolverError, ParameterError
from ..surface import SurfaceProfile
from .constants import ODE_ATOL, ODE_RTOL
from .distance import solve_geodesics
from .types import ChartPoint, GeodesicArc, Location, Pole

logger = logging.getLogger(__name__)


def _initial_chart_state(surface: SurfaceProfile, start: Location, direction: float) -> np.ndarray:
    """(x, y, v_x, v_y) for a unit-speed launch at the given angle from ∂r."""
    if isinstance(start, Pole):
        return np.array([0.0, 0.0, math.cos(direction), math.sin(direction)])
    cos_u, sin_u = math.cos(start.u), math.sin(start.u)
    radial = math.cos(direction)
    angular = start.r * math.sin(direction) / float(surface.phi(start.r))
    return np.array([
        start.r * cos_u,
        start.r * sin_u,
        radial * cos_u - angular * sin_u,
        radial * sin_u + angular * cos_u,
    ])


def _chart_acceleration(surface: SurfaceProfile, x, y, vx, vy):
    r2 = x * x + y * y
    r = np.minimum(np.sqrt(r2), surface.r_max)
    g1, g2 = surface.chart_acceleration_terms(r)
    safe_r2 = np.where(r2 > 0.0, r2, 1.0)
    cross = x * vy - y * vx
    radial = g1 * cross * cross / safe_r2
    swirl = 2.0 * g2 * (x * vx + y * vy) * cross / safe_r2
    return radial * x - swirl * y, radial * y + swirl * x


def _exit_event(surface: SurfaceProfile, count: int):
    limit2 = surface.r_max * surface.r_max

    def event(_, state):
        x = state[0:count]
        y = state[count:2 * count]
        return limit2 - float(np.max(x * x + y * y))

    event.terminal = True
    event.direction = -1
    return event


def _polar_samples(x, y, vx, vy):
    r = np.hypot(x, y)
    u = np.unwrap(np.arctan2(y, x))
    safe = np.where(r > 0.0, r, 1.0)
    dr = (x * vx + y * vy) / safe
    du = (x * vy - y * vx) / (safe * safe)
    return r, u, dr, du


def shoot(
    surface: SurfaceProfile,
    start: Location,
    direction: float,
    length: float,
    step: float,
) -> GeodesicArc:
    """Integrate the unit-speed geodesic launched from start.

    direction is the angle of the initial tangent measured from ∂r towards
    ∂u/φ; at the pole it is the chart angle of the radial ray.
    """
    if not (length > 0.0 and math.isfinite(length)):
        raise ParameterError(f"geodesic length must be positive, got {length!r}")
    if not step > 0.0:
        raise ParameterError(f"sampling step must be positive, got {step!r}")
    if not isinstance(start, Pole) and start.r > surface.r_max:
        raise DomainError(f"start radius {start.r!r} beyond r_max={surface.r_max!r}")

    count = max(2, int(math.ceil(length / step)) + 1)
    arclength = np.linspace(0.0, length, count)

    if isinstance(start, Pole):
        # 极点出发为径向射线
        if length > surface.r_max:
            raise GeodesicRangeError(surface.r_max, surface.r_max)
        u = np.full(count, float(direction) % (2.0 * math.pi))
        return GeodesicArc(
            start, (1.0, 0.0), float(length), arclength,
            arclength.copy(), u, np.ones(count), np.zeros(count),
        )

    state0 = _initial_chart_state(surface, start, direction)

    def rhs(_, state):
        x, y, vx, vy = state
        ax, ay = _chart_acceleration(surface, x, y, vx, vy)
        return [vx, vy, float(ax), float(ay)]

    solution = solve_ivp(
        rhs, (0.0, length), state0, method="DOP853", t_eval=arclength,
        rtol=ODE_RTOL, atol=ODE_ATOL, events=_exit_event(surface, 1),
    )
    if solution.status == 1:
        exit_s = float(solution.t_events[0][0])
        logger.debug(f"geodesic from {start!r} left the annulus at s={exit_s!r}")
        raise GeodesicRangeError(exit_s, surface.r_max)
    if not solution.success:
        raise InternalSolverError("geodesic integration failed", {"message": solution.message})

    x, y, vx, vy = solution.y
    r, u, dr, du = _polar_samples(x, y, vx, vy)
    u = u - u[0] + start.u
    initial = (math.cos(direction), math.sin(direction) / float(surface.phi(start.r)))
    return GeodesicArc(start, initial, float(length), solution.t, r, u, dr, du)


def jacobi_curvatures(
    surface: SurfaceProfile,
    p0: Location,
    target_r: Sequence[float],
    target_u: Sequence[float],
) -> Tuple[np.ndarray, np.ndarray]:
    """Geodesic-circle curvature κ° about p0 at every target, with the distances.

    Integrates every minimizing geodesic together with its normal Jacobi
    field on the normalized interval τ ∈ [0, 1].
    """
    solution = solve_geodesics(surface, p0, target_r, target_u)
    if isinstance(p0, Pole):
        r = solution.target_r
        return surface.dphi(r) / surface.phi(r), solution.distance

    count = solution.distance.size
    lengths = solution.distance
    if np.any(lengths <= 0.0):
        raise DomainError("geodesic circle curvature is undefined at the base point")

    phi_p = float(surface.phi(p0.r))
    radial = solution.departure_dr
    angular = p0.r * solution.clairaut / (phi_p * phi_p)
    cos_u, sin_u = math.cos(p0.u), math.sin(p0.u)
    state0 = np.concatenate([
        np.full(count, p0.r * cos_u),
        np.full(count, p0.r * sin_u),
        radial * cos_u - angular * sin_u,
        radial * sin_u + angular * cos_u,
        np.zeros(count),
        np.ones(count),
    ])

    def rhs(_, state):
        x, y, vx, vy, jac, djac = state.reshape(6, count)
        ax, ay = _chart_acceleration(surface, x, y, vx, vy)
        r = np.minimum(np.hypot(x, y), surface.r_max)
        curvature = surface.gauss_curvature(r)
        return (lengths * np.stack([vx, vy, ax, ay, djac, -curvature * jac])).ravel()

    result = solve_ivp(
        rhs, (0.0, 1.0), state0, method="DOP853",
        rtol=ODE_RTOL, atol=ODE_ATOL, events=_exit_event(surface, count),
    )
    if result.status == 1:
        raise GeodesicRangeError(float(result.t_events[0][0]), surface.r_max)
    if not result.success:
        raise InternalSolverError("Jacobi field integration failed", {"message": result.message})

    final = result.y[:, -1].reshape(6, count)
    return final[5] / final[4], lengths


__all__ = ["shoot", "jacobi_curvatures"]
