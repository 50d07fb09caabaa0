"""
点到点测地距离与径向梯度

最小测地线由 Clairaut 常数 c = φ²u' 参数化。设 A、B 为两端点中 r 较大/较小者，
发射参数 s ∈ [0, 2]：
  s ∈ [0, 1]  直达分支，c = s·φ(r_B)，r 单调
  s ∈ (1, 2]  转折分支，c = (2−s)·φ(r_B)，先向内到 φ⁻¹(c) 再向外
角度差 Δu(s) 从 0 单调增到 π，对目标角差做 regula falsi（Illinois）打靶。
积分用换元 ρ = φ(r) = c·cosh ξ，被积函数在转折点处光滑。
"""
import logging
import math
from typing import Tuple

import numpy as np

from ..exceptions import DomainError, InternalSolverError
from ..surface import SurfaceProfile
from .constants import (
    MAX_PANELS,
    MAX_SHOOTING_ITERATIONS,
    MIN_CLAIRAUT_FRACTION,
    MISS_TOLERANCE,
    PANEL_WIDTH,
    QUADRATURE_NODES,
)
from .types import ChartPoint, GeodesicSolution, Location, Pole

logger = logging.getLogger(__name__)

_GL_X, _GL_W = np.polynomial.legendre.leggauss(QUADRATURE_NODES)
_GL_T = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


def wrap_angle(delta):
    """Map angle differences into (−π, π]"""
    wrapped = np.mod(np.asarray(delta, dtype=float) + math.pi, 2.0 * math.pi) - math.pi
    return np.where(wrapped == -math.pi, math.pi, wrapped)


def _xi_integrals(surface: SurfaceProfile, c, xi_lo, xi_hi) -> Tuple[np.ndarray, np.ndarray]:
    """∫ dξ/(φ' cosh ξ) and ∫ c cosh ξ/φ' dξ over [xi_lo, xi_hi] with r = φ⁻¹(c cosh ξ)."""
    span = np.maximum(xi_hi - xi_lo, 0.0)
    panels = int(min(MAX_PANELS, max(1, math.ceil(float(np.max(span, initial=0.0)) / PANEL_WIDTH))))
    offsets = ((np.arange(panels)[:, None] + _GL_T[None, :]).ravel()) / panels
    weights = np.tile(_GL_W, panels) / panels

    xi = xi_lo[:, None] + span[:, None] * offsets[None, :]
    cosh_xi = np.cosh(xi)
    rho = c[:, None] * cosh_xi
    r = surface.inverse_phi(rho)
    dphi = surface.dphi(np.minimum(r, surface.r_max))
    delta_u = span * np.sum(weights / (dphi * cosh_xi), axis=1)
    length = span * np.sum(weights * rho / dphi, axis=1)
    return delta_u, length


def _sweep(surface, s, phi_a, phi_b, r_a, r_b):
    """Angular sweep Δu(s) and length for launch parameters strictly inside (0, 2)."""
    direct = s <= 1.0
    fraction = np.where(direct, s, 2.0 - s)
    c = np.maximum(fraction, MIN_CLAIRAUT_FRACTION) * phi_b

    xi_a = np.arccosh(np.maximum(phi_a / c, 1.0))
    xi_b = np.arccosh(np.maximum(phi_b / c, 1.0))
    zeros = np.zeros_like(c)

    du_direct, len_direct = _xi_integrals(surface, c, xi_b, xi_a)
    du_outer, len_outer = _xi_integrals(surface, c, zeros, xi_a)
    du_inner, len_inner = _xi_integrals(surface, c, zeros, xi_b)

    delta_u = np.where(direct, du_direct, du_outer + du_inner)
    length = np.where(direct, len_direct, len_outer + len_inner)
    # 等半径时直达分支退化
    same = r_a == r_b
    delta_u = np.where(direct & same, 0.0, delta_u)
    length = np.where(direct & same, 0.0, length)
    return delta_u, length, c


def solve_geodesics(surface: SurfaceProfile, p: Location, target_r, target_u) -> GeodesicSolution:
    """Minimizing geodesics from p to every target (r_j, u_j), vectorized."""
    target_r = np.atleast_1d(np.asarray(target_r, dtype=float))
    target_u = np.atleast_1d(np.asarray(target_u, dtype=float))
    if target_r.shape != target_u.shape:
        raise DomainError("target radius and angle arrays differ in shape")
    if np.any(target_r <= 0.0) or np.any(target_r > surface.r_max):
        raise DomainError(f"targets must lie in (0, r_max={surface.r_max!r}]")

    n = target_r.size
    if isinstance(p, Pole):
        ones = np.ones(n)
        return GeodesicSolution(target_r.copy(), np.zeros(n), ones, ones.copy(), target_r, target_u)
    if p.r > surface.r_max:
        raise DomainError(f"base point r={p.r!r} beyond r_max={surface.r_max!r}")

    r_p = np.full(n, p.r)
    signed = wrap_angle(target_u - p.u)
    delta = np.abs(signed)
    orientation = np.where(signed < 0.0, -1.0, 1.0)

    r_a = np.maximum(r_p, target_r)
    r_b = np.minimum(r_p, target_r)
    phi_a = surface.phi(r_a)
    phi_b = surface.phi(r_b)

    s = np.zeros(n)
    length = r_a - r_b
    c = np.zeros(n)

    meridian = delta <= 1e-15
    antipodal = delta >= math.pi - 1e-15
    s[antipodal] = 2.0
    length[antipodal] = (r_a + r_b)[antipodal]
    active = ~(meridian | antipodal)

    tolerance = MISS_TOLERANCE * surface.r_max
    iterations = 0
    if np.any(active):
        idx = np.flatnonzero(active)
        lo = np.zeros(idx.size)
        hi = np.full(idx.size, 2.0)
        f_lo = -delta[idx]
        f_hi = math.pi - delta[idx]
        side = np.zeros(idx.size, dtype=int)
        best_s = np.ones(idx.size)
        best_len = np.zeros(idx.size)
        best_c = np.zeros(idx.size)
        pending = np.ones(idx.size, dtype=bool)
        scale = phi_a[idx]

        while np.any(pending):
            iterations += 1
            if iterations > MAX_SHOOTING_ITERATIONS:
                raise InternalSolverError(
                    "geodesic launch-parameter search did not converge",
                    {"unresolved": int(np.count_nonzero(pending)), "base": p.to_dict()},
                )
            k = np.flatnonzero(pending)
            trial = (lo[k] * f_hi[k] - hi[k] * f_lo[k]) / (f_hi[k] - f_lo[k])
            width = hi[k] - lo[k]
            trial = np.clip(trial, lo[k] + 1e-12 * width, hi[k] - 1e-12 * width)
            g = idx[k]
            sweep, trial_len, trial_c = _sweep(
                surface, trial, phi_a[g], phi_b[g], r_a[g], r_b[g]
            )
            miss = sweep - delta[g]
            best_s[k], best_len[k], best_c[k] = trial, trial_len, trial_c

            done = (np.abs(miss) * scale[k] < tolerance) | (width < 4e-16)
            pending[k[done]] = False

            go_up = (~done) & (miss < 0.0)
            go_down = (~done) & (miss > 0.0)
            up, down = k[go_up], k[go_down]
            lo[up], f_lo[up] = trial[go_up], miss[go_up]
            hi[down], f_hi[down] = trial[go_down], miss[go_down]
            # Illinois：同侧连续保留时把另一端函数值减半
            f_hi[up[side[up] == 1]] *= 0.5
            f_lo[down[side[down] == -1]] *= 0.5
            side[up] = 1
            side[down] = -1

        s[idx] = best_s
        length[idx] = best_len
        c[idx] = best_c

    c = orientation * c
    phi_p = surface.phi(r_p)
    phi_q = surface.phi(target_r)
    depart_mag = np.sqrt(np.clip(1.0 - (c / phi_p) ** 2, 0.0, 1.0))
    arrive_mag = np.sqrt(np.clip(1.0 - (c / phi_q) ** 2, 0.0, 1.0))
    direct = s <= 1.0
    outward = target_r > r_p
    inward = target_r < r_p
    departure = np.where(outward & direct, 1.0, -1.0) * depart_mag
    arrival = np.where(inward & direct, -1.0, 1.0) * arrive_mag
    logger.debug(f"solved {n} geodesics in {iterations} shooting iterations")
    return GeodesicSolution(length, c, departure, arrival, target_r, target_u, iterations)


def distance(surface: SurfaceProfile, p: Location, q: Location) -> float:
    """Length of the unique minimizing geodesic between p and q."""
    if isinstance(q, Pole):
        return 0.0 if isinstance(p, Pole) else float(p.r)
    if isinstance(p, Pole):
        return float(q.r)
    if p == q:
        return 0.0
    solution = solve_geodesics(surface, p, q.r, q.u)
    return float(solution.distance[0])


def radial_gradients(surface: SurfaceProfile, p0: Location, target_r, target_u):
    """∂r = ∇dist(p0, ·) at each target as (r-component, u-component) arrays."""
    solution = solve_geodesics(surface, p0, target_r, target_u)
    phi = surface.phi(solution.target_r)
    return solution.arrival_dr, solution.clairaut / (phi * phi), solution


def radial_gradient(surface: SurfaceProfile, p0: Location, x: ChartPoint) -> Tuple[float, float]:
    """Unit tangent at x of the minimizing geodesic from p0 (points away from p0)."""
    if not isinstance(x, ChartPoint):
        raise DomainError("radial gradient is undefined at the pole")
    if isinstance(p0, ChartPoint) and p0 == x:
        raise DomainError("radial gradient is undefined at the base point")
    dr, du, _ = radial_gradients(surface, p0, x.r, x.u)
    return float(dr[0]), float(du[0])


__all__ = [
    "wrap_angle",
    "solve_geodesics",
    "distance",
    "radial_gradient",
    "radial_gradients",
]
