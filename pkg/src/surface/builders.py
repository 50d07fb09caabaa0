"""
曲面构造函数

build_constant_curvature  - 闭式常曲率模型
build_from_curvature      - 由曲率族积分 φ'' = −𝒦φ
build_tabulated           - 由用户给定的 (r, φ, φ', φ'') 表
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from ..exceptions import ParameterError, SurfaceConstructionError
from .constants import (
    CIRCLE_CURVATURE_TOLERANCE,
    CURVATURE_TOLERANCE,
    DEFAULT_GRID_STEP,
    DEFAULT_R_MAX_FACTOR,
    PSI_IDENTITY_TOLERANCE,
    PSI_TOLERANCE,
)
from .families import CurvatureFamily, get_curvature_family
from .profile import (
    ConstantCurvatureProfile,
    SurfaceFamily,
    SurfaceProfile,
    TabulatedProfile,
)

logger = logging.getLogger(__name__)


@dataclass
class InvariantCheck:
    """单个不变量的检查结果"""
    name: str
    passed: bool
    worst_value: float
    worst_r: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_value": self.worst_value,
            "worst_r": self.worst_r,
        }


def _resolve_grid(a: float, r_max: Optional[float], grid_step: float) -> tuple:
    if not grid_step > 0:
        raise ParameterError(f"grid_step must be positive, got {grid_step!r}")
    if r_max is None:
        r_max = DEFAULT_R_MAX_FACTOR / a
    if not r_max > grid_step:
        raise ParameterError(f"r_max={r_max!r} must exceed grid_step={grid_step!r}")
    return float(r_max), float(grid_step)


def build_constant_curvature(
    a: float,
    r_max: Optional[float] = None,
    grid_step: float = DEFAULT_GRID_STEP,
) -> SurfaceProfile:
    """Model surface with 𝒦 ≡ −a² and closed-form evaluators."""
    if not (isinstance(a, (int, float)) and a > 0 and math.isfinite(a)):
        raise ParameterError(f"curvature constant a must be positive, got {a!r}")
    r_max, grid_step = _resolve_grid(float(a), r_max, grid_step)
    return ConstantCurvatureProfile(float(a), r_max, grid_step)


def _integrate_profile(family: CurvatureFamily, r_max: float, grid_step: float):
    """Classical RK4 for (φ, φ', Φ, ψ) with ψ' = 𝒦'φ², seeded at r = grid_step.

    ψ is carried as its own component because (φ')² − φφ'' cancels
    catastrophically once φ is large.
    """
    count = int(math.ceil(r_max / grid_step - 1e-9))
    h = grid_step
    nodes = h * np.arange(count + 1)

    k0, k2 = family.k0, family.k2
    c3 = -k0 / 6.0
    c5 = (k0 * k0 / 6.0 - k2) / 20.0

    phi = np.empty(count + 1)
    dphi = np.empty(count + 1)
    area = np.empty(count + 1)
    psi = np.empty(count + 1)
    phi[0], dphi[0], area[0], psi[0] = 0.0, 1.0, 0.0, 1.0

    # Taylor seed at r = h
    phi[1] = h + c3 * h ** 3 + c5 * h ** 5
    dphi[1] = 1.0 + 3.0 * c3 * h ** 2 + 5.0 * c5 * h ** 4
    area[1] = 0.5 * h ** 2 + 0.25 * c3 * h ** 4 + c5 * h ** 6 / 6.0
    psi[1] = 1.0 + k2 * h ** 4 / 2.0

    curvature = family.curvature
    derivative = family.derivative

    def rhs(r, y):
        p, dp, _, _ = y
        return (dp, -float(curvature(r)) * p, p, float(derivative(r)) * p * p)

    state = (phi[1], dphi[1], area[1], psi[1])
    for j in range(1, count):
        r = nodes[j]
        k1 = rhs(r, state)
        k2_ = rhs(r + 0.5 * h, tuple(s + 0.5 * h * k for s, k in zip(state, k1)))
        k3 = rhs(r + 0.5 * h, tuple(s + 0.5 * h * k for s, k in zip(state, k2_)))
        k4 = rhs(r + h, tuple(s + h * k for s, k in zip(state, k3)))
        state = tuple(
            s + h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4)
            for s, q1, q2, q3, q4 in zip(state, k1, k2_, k3, k4)
        )
        phi[j + 1], dphi[j + 1], area[j + 1], psi[j + 1] = state

    if not np.all(np.isfinite(phi)):
        bad = int(np.argmax(~np.isfinite(phi)))
        raise SurfaceConstructionError("finite warp function", float(nodes[bad]))
    return nodes, phi, dphi, area, psi, (c3, c5)


def build_from_curvature(
    family: str,
    a: float,
    b: float,
    c: float,
    r_max: Optional[float] = None,
    grid_step: float = DEFAULT_GRID_STEP,
) -> SurfaceProfile:
    """Tabulate φ for a pinched curvature family by integrating φ'' = −𝒦φ.

    a = b is accepted as the degenerate constant-curvature member of the family.
    """
    curvature_family = get_curvature_family(family, a, b, c)
    r_max, grid_step = _resolve_grid(curvature_family.a, r_max, grid_step)
    nodes, phi, dphi, area, psi, taylor = _integrate_profile(curvature_family, r_max, grid_step)
    dpsi = curvature_family.derivative(nodes) * phi * phi

    profile = TabulatedProfile(
        family=SurfaceFamily(curvature_family.name),
        a=curvature_family.a,
        b=curvature_family.b,
        nodes=nodes,
        phi=phi,
        dphi=dphi,
        area=area,
        psi=psi,
        dpsi=dpsi,
        curvature=curvature_family.curvature,
        taylor=taylor,
        grid_step=grid_step,
        params={"c": curvature_family.c},
    )
    strictly_decreasing = curvature_family.b > curvature_family.a
    verify_invariants(profile, psi_monotone=strictly_decreasing, raise_on_failure=True)
    logger.info(f"Built {profile.surface_id} on [0, {profile.r_max}] with step {grid_step}")
    return profile


def build_tabulated(
    r: np.ndarray,
    phi: np.ndarray,
    dphi: np.ndarray,
    ddphi: np.ndarray,
    a: Optional[float] = None,
    b: Optional[float] = None,
) -> SurfaceProfile:
    """Profile from a user-supplied table starting at r = 0.

    a and b default to the tightest pinching constants of the table.
    """
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    dphi = np.asarray(dphi, dtype=float)
    ddphi = np.asarray(ddphi, dtype=float)
    if not (r.ndim == 1 and r.shape == phi.shape == dphi.shape == ddphi.shape):
        raise ParameterError("table columns must be one-dimensional and of equal length")
    if r.size < 8:
        raise ParameterError(f"table needs at least 8 rows, got {r.size}")
    if r[0] != 0.0 or np.any(np.diff(r) <= 0.0):
        raise ParameterError("table radii must start at 0 and increase strictly")
    if abs(phi[0]) > 1e-12 or abs(dphi[0] - 1.0) > 1e-8:
        raise SurfaceConstructionError("φ(0)=0, φ'(0)=1", 0.0)

    node_curvature = np.empty_like(r)
    node_curvature[1:] = -ddphi[1:] / phi[1:]
    # 𝒦 ≈ k0 + k2 r² near the pole
    head = slice(1, min(6, r.size))
    k2, k0 = np.polyfit(r[head] ** 2, node_curvature[head], 1)
    node_curvature[0] = k0

    curvature_spline = _table_curvature(r, node_curvature)
    a = float(a) if a is not None else float(math.sqrt(max(-node_curvature.max(), 0.0)))
    b = float(b) if b is not None else float(math.sqrt(max(-node_curvature.min(), 0.0)))
    if not (a > 0 and b >= a):
        raise SurfaceConstructionError("pinching -b² <= 𝒦 <= -a² < 0", float(r[int(np.argmax(node_curvature))]))

    area = np.concatenate(([0.0], np.cumsum(
        0.5 * (r[1:] - r[:-1]) * (phi[1:] + phi[:-1])
        + (r[1:] - r[:-1]) ** 2 * (dphi[:-1] - dphi[1:]) / 12.0
    )))
    psi = dphi * dphi - phi * ddphi
    profile = TabulatedProfile(
        family=SurfaceFamily.TABULATED,
        a=a,
        b=b,
        nodes=r,
        phi=phi,
        dphi=dphi,
        area=area,
        psi=psi,
        dpsi=None,
        curvature=curvature_spline,
        taylor=(-k0 / 6.0, (k0 * k0 / 6.0 - k2) / 20.0),
        grid_step=float(np.min(np.diff(r))),
    )
    verify_invariants(profile, psi_monotone=False, raise_on_failure=True)
    return profile


def _table_curvature(r: np.ndarray, values: np.ndarray):
    spline = CubicSpline(r, values)

    def curvature(x):
        return spline(np.asarray(x, dtype=float))

    return curvature


def verify_invariants(
    profile: SurfaceProfile,
    psi_monotone: bool = True,
    raise_on_failure: bool = False,
) -> List[InvariantCheck]:
    """Check the profile invariants on its grid.

    Raises SurfaceConstructionError on the first failed invariant when
    raise_on_failure is set; otherwise returns all results.
    """
    r = profile.grid()
    a, b = profile.a, profile.b
    phi = profile.phi(r)
    dphi = profile.dphi(r)
    ddphi = profile.ddphi(r)
    curvature = profile.gauss_curvature(r)
    psi = profile.psi(r)
    checks: List[InvariantCheck] = []

    def record(name: str, violation: np.ndarray):
        worst = int(np.argmax(violation))
        passed = bool(violation[worst] <= 0.0)
        checks.append(InvariantCheck(name, passed, float(violation[worst]), float(r[worst])))
        if raise_on_failure and not passed:
            raise SurfaceConstructionError(name, float(r[worst]), f"excess {violation[worst]!r}")

    record("phi > 0", -phi)
    record("phi' > 0", -dphi)
    tol = CURVATURE_TOLERANCE * b * b
    record("K >= -b^2", -b * b - tol - curvature)
    record("K <= -a^2", curvature - (-a * a + tol))
    scale = np.maximum(dphi * dphi, 1.0)
    record("psi = phi'^2 - phi phi''",
           np.abs(psi - (dphi * dphi - phi * ddphi)) / scale - PSI_IDENTITY_TOLERANCE)
    record("psi <= 1", psi - 1.0 - PSI_TOLERANCE)
    if psi_monotone:
        increase = np.concatenate(([0.0], np.diff(psi)))
        record("psi non-increasing", increase - PSI_TOLERANCE)

    ratio = dphi / phi
    lower = a / np.tanh(a * r)
    upper = b / np.tanh(b * r)
    record("a coth(ar) <= phi'/phi", (lower - ratio) / ratio - CIRCLE_CURVATURE_TOLERANCE)
    record("phi'/phi <= b coth(br)", (ratio - upper) / ratio - CIRCLE_CURVATURE_TOLERANCE)
    return checks
