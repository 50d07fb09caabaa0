"""
参数化格式：显式 RK4 推进 ∂t γ = (h − κ)N

每个内部级都重新计算 h，使离散恒等式 ∮(h − κ)κ^α ds = 0 逐级成立。
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..curve import DiscreteCurve, RadialGraph, is_embedded, redistribute
from ..exceptions import DomainError, NumericalDegeneracyError, ParameterError
from ..surface import SurfaceProfile
from .global_term import global_term
from .types import CurveState, DtPolicy, FlowConfig, FlowHalted, FlowState, HaltReason, Scheme

logger = logging.getLogger(__name__)

CFL_CONSTANT = 0.5
KAPPA_CEILING_FACTOR = 1e3
ESCAPE_GRID_MARGIN = 5


# ========== 阈值与步长 ==========

def resolve_thresholds(surface: SurfaceProfile, curve: CurveState, config: FlowConfig) -> FlowConfig:
    """Fill unset halt thresholds from the initial curve and the surface"""
    kappa_ceiling = config.kappa_ceiling
    if kappa_ceiling is None:
        kappa_ceiling = KAPPA_CEILING_FACTOR * max(float(np.max(np.abs(curve.kappa))), surface.b)
    escape_radius = config.escape_radius
    if escape_radius is None:
        escape_radius = surface.r_max - ESCAPE_GRID_MARGIN * surface.grid_step
    if not escape_radius > surface.grid_step:
        raise ParameterError(f"escape radius {escape_radius!r} lies inside the pole cell")
    return config.with_thresholds(kappa_ceiling, escape_radius)


def time_step(curve: CurveState, config: FlowConfig) -> float:
    """dt from the policy; cfl gives σ·min(ds)²/2, scaled up for the semi-implicit scheme"""
    if config.dt_policy == DtPolicy.FIXED:
        return config.dt
    dt = config.safety * CFL_CONSTANT * float(np.min(curve.ds)) ** 2
    if config.scheme == Scheme.SEMI_IMPLICIT_GRAPH:
        dt *= config.implicit_factor
    return dt


# ========== 约束反馈 ==========

def length_area(surface: SurfaceProfile, curve: CurveState) -> Tuple[float, float]:
    if isinstance(curve, RadialGraph):
        return float(np.sum(curve.ds)), float(np.sum(surface.area_primitive(curve.r)) * curve.du)
    return curve.length, curve.area


def effective_h(surface: SurfaceProfile, state: FlowState, curve: CurveState,
                config: FlowConfig, h: float) -> float:
    """h with the optional drift feedback of the conserved quantity.

    α=0: h − g(A − A₀)/(L·τ), so that dA/dt = −g(A − A₀)/τ.
    α=1: h − g(L − L₀)/(∮κ ds·τ), so that dL/dt = −g(L − L₀)/τ.
    """
    if config.feedback_gain == 0.0:
        return h
    length, area = length_area(surface, curve)
    scale = config.feedback_gain / config.feedback_time_scale
    if config.alpha == 0.0:
        return h - scale * (area - state.reference_area) / length
    if config.alpha == 1.0:
        total = float(np.sum(curve.kappa * curve.ds))
        return h - scale * (length - state.reference_length) / total
    return h


def _stage_h(surface: SurfaceProfile, state: FlowState, curve: CurveState, config: FlowConfig) -> float:
    try:
        h = global_term(surface, curve, config.alpha)
    except DomainError as e:
        raise FlowHalted(HaltReason.BLOW_UP, f"global term undefined: {e}", state) from e
    return effective_h(surface, state, curve, config, h)


# ========== 停止条件 ==========

def screen_radii(surface: SurfaceProfile, r: np.ndarray, state: FlowState) -> None:
    """Raise the halt a proposed set of radii would cause, before building a curve"""
    if not np.all(np.isfinite(r)):
        raise FlowHalted(HaltReason.BLOW_UP, "non-finite radius", state)
    if float(np.max(r)) > surface.r_max:
        raise FlowHalted(HaltReason.ESCAPE, f"max r = {float(np.max(r))!r} left the annulus", state)
    if float(np.min(r)) <= surface.grid_step:
        raise FlowHalted(HaltReason.BLOW_UP, "curve reached the pole chart singularity", state)


def check_halt(surface: SurfaceProfile, curve: CurveState, config: FlowConfig,
               step: int, state: FlowState) -> None:
    """Priority: blow-up > escape > embeddedness-loss > graph-breakdown"""
    kappa = curve.kappa
    if not np.all(np.isfinite(kappa)):
        raise FlowHalted(HaltReason.BLOW_UP, "non-finite curvature", state)
    peak = float(np.max(np.abs(kappa)))
    if peak > config.kappa_ceiling:
        raise FlowHalted(HaltReason.BLOW_UP, f"max |κ| = {peak!r} above {config.kappa_ceiling!r}", state)
    r_max = float(np.max(curve.r))
    if r_max > config.escape_radius:
        raise FlowHalted(HaltReason.ESCAPE,
                         f"max r = {r_max!r} above {config.escape_radius!r}; min r = {float(np.min(curve.r))!r}",
                         state)
    if isinstance(curve, DiscreteCurve):
        stride = config.embeddedness_stride
        if stride and step % stride == 0 and not is_embedded(curve):
            raise FlowHalted(HaltReason.EMBEDDEDNESS_LOSS, f"self-intersection at step {step}", state)
    else:
        slope = float(np.max(np.abs(curve.dr)))
        if slope > config.slope_ceiling:
            raise FlowHalted(HaltReason.GRAPH_BREAKDOWN,
                             f"max |∂ᵤr| = {slope!r} above {config.slope_ceiling!r}", state)


def _build(surface: SurfaceProfile, r: np.ndarray, u: np.ndarray, state: FlowState) -> DiscreteCurve:
    screen_radii(surface, r, state)
    if not np.all(np.isfinite(u)):
        raise FlowHalted(HaltReason.BLOW_UP, "non-finite angle", state)
    try:
        return DiscreteCurve(surface, r, u)
    except NumericalDegeneracyError as e:
        raise FlowHalted(HaltReason.BLOW_UP, str(e), state) from e


# ========== 推进 ==========

def _velocity(surface: SurfaceProfile, state: FlowState, curve: DiscreteCurve,
              config: FlowConfig) -> Tuple[np.ndarray, np.ndarray]:
    speed = _stage_h(surface, state, curve, config) - curve.kappa
    normal_r, normal_u = curve.normal
    return speed * normal_r, speed * normal_u


def step_parametric(surface: SurfaceProfile, state: FlowState, config: FlowConfig,
                    dt: Optional[float] = None) -> FlowState:
    """One classical RK4 step of (ṙ, u̇) = (h − κ)(Nʳ, Nᵘ).

    Raises FlowHalted carrying the last valid state when a halt condition is met.
    """
    curve = state.curve
    if not isinstance(curve, DiscreteCurve):
        raise ParameterError("step_parametric needs a DiscreteCurve state")
    if dt is None:
        dt = time_step(curve, config)
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ParameterError(f"time step must be positive, got {dt!r}")

    r0, u0 = curve.r, curve.u_lifted
    k1 = _velocity(surface, state, curve, config)
    stage = _build(surface, r0 + 0.5 * dt * k1[0], u0 + 0.5 * dt * k1[1], state)
    k2 = _velocity(surface, state, stage, config)
    stage = _build(surface, r0 + 0.5 * dt * k2[0], u0 + 0.5 * dt * k2[1], state)
    k3 = _velocity(surface, state, stage, config)
    stage = _build(surface, r0 + dt * k3[0], u0 + dt * k3[1], state)
    k4 = _velocity(surface, state, stage, config)

    weight = dt / 6.0
    r1 = r0 + weight * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    u1 = u0 + weight * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    following = _build(surface, r1, u1, state)

    step = state.step + 1
    stride = config.redistribution_stride
    if stride and step % stride == 0:
        try:
            following = redistribute(following)
        except NumericalDegeneracyError as e:
            raise FlowHalted(HaltReason.BLOW_UP, f"redistribution failed: {e}", state) from e

    check_halt(surface, following, config, step, state)
    try:
        h = global_term(surface, following, config.alpha)
    except DomainError as e:
        raise FlowHalted(HaltReason.BLOW_UP, f"global term undefined: {e}", state) from e
    return state.advance(following, dt, h)
