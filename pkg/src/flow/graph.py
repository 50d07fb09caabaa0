"""
径向图格式：半隐式推进 ∂t r = (v/φ)(h − κ)

展开为 ∂t r = (v/φ)h + (1/v²)∂²ᵤr − (φ'/φ)(1 + (∂ᵤr)²/v²)，
扩散项以当前状态冻结系数隐式处理，其余项显式。
"""
import logging
import math
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from ..curve import RadialGraph
from ..exceptions import DomainError, InternalSolverError, ParameterError
from ..surface import SurfaceProfile
from ..utils.stencils import periodic_d2_matrix
from .global_term import global_term
from .parametric import check_halt, effective_h, screen_radii, time_step
from .types import FlowConfig, FlowHalted, FlowState, HaltReason

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def _laplacian(count: int, step: float) -> sparse.csc_matrix:
    return periodic_d2_matrix(count, step)


def step_graph(surface: SurfaceProfile, state: FlowState, config: FlowConfig,
               dt: Optional[float] = None) -> FlowState:
    """One semi-implicit step of the radial-graph equation"""
    graph = state.curve
    if not isinstance(graph, RadialGraph):
        raise ParameterError("step_graph needs a RadialGraph state")
    if dt is None:
        dt = time_step(graph, config)
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ParameterError(f"time step must be positive, got {dt!r}")

    try:
        h = global_term(surface, graph, config.alpha)
    except DomainError as e:
        raise FlowHalted(HaltReason.BLOW_UP, f"global term undefined: {e}", state) from e
    h = effective_h(surface, state, graph, config, h)

    v, phi, dphi, dr = graph.speed, graph.phi, graph.dphi, graph.dr
    explicit = v / phi * h - dphi / phi * (1.0 + dr ** 2 / v ** 2)
    diffusion = sparse.diags(1.0 / v ** 2) @ _laplacian(graph.n, graph.du)
    system = (sparse.identity(graph.n, format="csc") - dt * diffusion).tocsc()
    r = spsolve(system, graph.r + dt * explicit)
    if r.shape != graph.r.shape:
        raise InternalSolverError("implicit solve returned a malformed vector", {"shape": r.shape})

    screen_radii(surface, r, state)
    following = RadialGraph(surface, r)
    step = state.step + 1
    check_halt(surface, following, config, step, state)
    try:
        h_next = global_term(surface, following, config.alpha)
    except DomainError as e:
        raise FlowHalted(HaltReason.BLOW_UP, f"global term undefined: {e}", state) from e
    return state.advance(following, dt, h_next)
