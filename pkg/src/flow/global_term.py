"""
全局项 h(t) = ∮κ^{1+α} ds / ∮κ^α ds
"""
import logging
import math

import numpy as np

from ..curve import RadialGraph
from ..exceptions import DomainError, ParameterError
from ..surface import SurfaceProfile
from .types import CurveState

logger = logging.getLogger(__name__)


def _is_even_integer(alpha: float) -> bool:
    return float(alpha).is_integer() and int(alpha) % 2 == 0


def _check_surface(surface: SurfaceProfile, curve: CurveState) -> None:
    if curve.surface is not surface:
        raise ParameterError("curve was sampled on a different surface")


def global_term(surface: SurfaceProfile, curve: CurveState, alpha: float) -> float:
    """Nonlocal term making ∮(h − κ)κ^α ds vanish.

    Uses the same quadrature weights ds as length_area, so the identity holds
    to roundoff on the discrete curve. Graphs use their own κ and ds = v du.
    """
    _check_surface(surface, curve)
    if not (alpha >= 0.0 and math.isfinite(alpha)):
        raise ParameterError(f"alpha must be a finite non-negative number, got {alpha!r}")
    kappa, ds = curve.kappa, curve.ds
    if alpha == 0.0:
        return float(np.sum(kappa * ds) / np.sum(ds))
    if not _is_even_integer(alpha) and np.any(kappa <= 0.0):
        j = int(np.argmin(kappa))
        raise DomainError(f"κ^{alpha!r} needs κ > 0; κ = {float(kappa[j])!r} at sample {j}")
    weight = np.abs(kappa) ** alpha if _is_even_integer(alpha) else kappa ** alpha
    denominator = float(np.sum(weight * ds))
    if denominator == 0.0:
        raise DomainError("∮κ^α ds vanishes")
    return float(np.sum(weight * kappa * ds)) / denominator


def mu_weighted_average(surface: SurfaceProfile, graph: CurveState) -> float:
    """Average of κ with the weight φ²/v du of the graph volume element.

    Agrees with the arclength average h (α=0) on geodesic circles about the pole.
    A parametric curve qualifies when it winds once about the pole with u̇ > 0;
    its graph speed is then |γ̇|/u̇.
    """
    _check_surface(surface, graph)
    if isinstance(graph, RadialGraph):
        weight = graph.phi ** 2 / graph.speed * graph.du
        return float(np.sum(graph.kappa * weight) / np.sum(weight))
    _, u_dot = graph.velocity
    if graph.winding * graph.orientation != 1 or np.any(u_dot * graph.orientation <= 0.0):
        raise ParameterError("curve is not a radial graph about the pole")
    u_dot = u_dot * graph.orientation
    weight = graph.phi ** 2 * u_dot ** 2 / graph.speed
    kappa = graph.kappa * graph.orientation
    return float(np.sum(kappa * weight) / np.sum(weight))
