"""
内切半径 ρ₋ 与外接半径 ρ₊

ρ₋ = max_{p∈Ω} min_j dist(p, γ_j)，ρ₊ = min_p max_j dist(p, γ_j)。
先在曲线图坐标包围盒上做粗网格（子采样目标点），再用 Nelder–Mead 精化。
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from ..curve import CurveLike, as_curve, chart_xy, is_embedded, winding_number
from ..exceptions import GeodesicRangeError, PreconditionError
from ..surface import SurfaceProfile
from .constants import (
    RADII_COARSE_TARGETS,
    RADII_EVALUATION_BUDGET,
    RADII_FATOL,
    RADII_GRID_SIZE,
    RADII_XATOL,
)
from .distance import solve_geodesics
from .types import POLE, Location, location_from_xy

logger = logging.getLogger(__name__)


@dataclass
class SearchSettings:
    """Center search configuration"""
    grid_size: int = RADII_GRID_SIZE
    evaluation_budget: int = RADII_EVALUATION_BUDGET
    coarse_targets: int = RADII_COARSE_TARGETS
    seed: int = 0

    def to_dict(self) -> Dict:
        return {
            "grid_size": self.grid_size,
            "evaluation_budget": self.evaluation_budget,
            "coarse_targets": self.coarse_targets,
            "seed": self.seed,
        }


@dataclass
class RadiiResult:
    """Inner/outer radius with their centers and an accuracy estimate"""
    rho_minus: float
    rho_plus: float
    center_minus: Location
    center_plus: Location
    accuracy: float
    evaluations: int = 0

    def to_dict(self) -> Dict:
        return {
            "rho_minus": self.rho_minus,
            "rho_plus": self.rho_plus,
            "center_minus": self.center_minus.to_dict(),
            "center_plus": self.center_plus.to_dict(),
            "accuracy": self.accuracy,
            "evaluations": self.evaluations,
        }


class _DistanceOracle:
    """min/max distance from a chart point to the curve samples, memoized"""

    def __init__(self, surface: SurfaceProfile, curve, targets: np.ndarray):
        self._surface = surface
        self._curve = curve
        self._r = curve.r[targets]
        self._u = curve.u[targets]
        self._cache: Dict[Tuple[float, float], Optional[Tuple[float, float]]] = {}
        self.evaluations = 0

    def extremes(self, x: float, y: float) -> Optional[Tuple[float, float]]:
        key = (float(x), float(y))
        if key in self._cache:
            return self._cache[key]
        location = location_from_xy(x, y)
        value: Optional[Tuple[float, float]] = None
        if location is POLE or location.r <= self._surface.r_max:
            try:
                dist = solve_geodesics(self._surface, location, self._r, self._u).distance
                value = (float(np.min(dist)), float(np.max(dist)))
            except GeodesicRangeError:
                value = None
        self.evaluations += 1
        self._cache[key] = value
        return value

    def inside(self, x: float, y: float) -> bool:
        return winding_number(self._curve, location_from_xy(x, y)) != 0


def _candidate_grid(x: np.ndarray, y: np.ndarray, size: int) -> List[Tuple[float, float]]:
    xs = np.linspace(float(np.min(x)), float(np.max(x)), size + 2)[1:-1]
    ys = np.linspace(float(np.min(y)), float(np.max(y)), size + 2)[1:-1]
    return [(0.0, 0.0)] + [(float(a), float(b)) for b in ys for a in xs]


def _refine(start, objective, budget: int, scale: float, rng) -> Tuple[np.ndarray, float]:
    jitter = 1.0 + 0.1 * rng.random(2)
    simplex = np.array([
        start,
        start + np.array([scale * jitter[0], 0.0]),
        start + np.array([0.0, scale * jitter[1]]),
    ])
    result = minimize(
        objective, start, method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "maxfev": budget,
            "xatol": RADII_XATOL * max(scale, 1.0),
            "fatol": RADII_FATOL,
        },
    )
    return result.x, float(result.fun)


def inradius_outradius(
    surface: SurfaceProfile,
    curve: CurveLike,
    search: Optional[SearchSettings] = None,
) -> RadiiResult:
    """Inner and outer radius of the region bounded by an embedded curve."""
    search = search or SearchSettings()
    curve = as_curve(curve)
    if not is_embedded(curve):
        raise PreconditionError("inner/outer radii require an embedded curve")

    n = curve.n
    full = _DistanceOracle(surface, curve, np.arange(n))
    stride = max(1, n // max(search.coarse_targets, 1))
    coarse = _DistanceOracle(surface, curve, np.arange(0, n, stride))
    x, y = chart_xy(curve)

    best_minus: Optional[Tuple[float, Tuple[float, float]]] = None
    best_plus: Optional[Tuple[float, Tuple[float, float]]] = None
    for cx, cy in _candidate_grid(x, y, search.grid_size):
        values = coarse.extremes(cx, cy)
        if values is None:
            continue
        near, far = values
        if best_plus is None or far < best_plus[0]:
            best_plus = (far, (cx, cy))
        if full.inside(cx, cy) and (best_minus is None or near > best_minus[0]):
            best_minus = (near, (cx, cy))
    if best_minus is None or best_plus is None:
        raise PreconditionError("no interior candidate center found for the radii search")

    rng = np.random.default_rng(search.seed)
    scale = 0.5 * max(float(np.ptp(x)), float(np.ptp(y))) / max(search.grid_size, 1)

    def negative_inradius(point):
        if not full.inside(point[0], point[1]):
            return math.inf
        values = full.extremes(point[0], point[1])
        return math.inf if values is None else -values[0]

    def outradius(point):
        values = full.extremes(point[0], point[1])
        return math.inf if values is None else values[1]

    start_minus = np.array(best_minus[1])
    start_plus = np.array(best_plus[1])
    minus_x, minus_f = _refine(start_minus, negative_inradius, search.evaluation_budget, scale, rng)
    plus_x, plus_f = _refine(start_plus, outradius, search.evaluation_budget, scale, rng)

    # 精化结果不如起点时保留起点
    if -minus_f < -negative_inradius(start_minus):
        minus_x, minus_f = start_minus, negative_inradius(start_minus)
    if plus_f > outradius(start_plus):
        plus_x, plus_f = start_plus, outradius(start_plus)

    rho_minus, rho_plus = -minus_f, plus_f
    spacing = float(np.max(curve.ds))
    accuracy = spacing * spacing / (8.0 * max(rho_minus, 1e-12)) + RADII_XATOL * max(scale, 1.0)
    logger.debug(
        f"radii search: rho_minus={rho_minus!r}, rho_plus={rho_plus!r}, "
        f"evaluations={full.evaluations + coarse.evaluations}"
    )
    return RadiiResult(
        rho_minus=rho_minus,
        rho_plus=rho_plus,
        center_minus=location_from_xy(*minus_x),
        center_plus=location_from_xy(*plus_x),
        accuracy=accuracy,
        evaluations=full.evaluations + coarse.evaluations,
    )
