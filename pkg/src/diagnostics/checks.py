"""
不等式与单调性检查

每个不等式按 "LHS − RHS ≤ slack" 检查：≤ 舍入量为通过，≤ slack 为警告（截断误差），
超过 slack 为失败。slack = 1e-9·scale + 离散误差估计。
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from ..curve import CurveLike, as_curve, winding_number
from ..exceptions import HadamardFlowError
from ..geodesics import (
    POLE,
    Location,
    Pole,
    jacobi_curvatures,
    radial_normal_products,
    solve_geodesics,
    support_function,
)
from ..surface import SurfaceProfile
from .bounds import (
    barrier_radius,
    inner_radius_lower_bound,
    osserman_gap,
    persistence_time,
    support_lower_bound,
)
from .types import CheckReport, DiagnosticsRecord, Snapshot, ViolationTracker

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
RELATIVE_SLACK = 1e-9
CONSERVATION_TOLERANCE = 1e-7
CONVEXITY_SLACK = 1e-6
DECAY_THRESHOLD = 1e-5
HESSIAN_SLACK = 1e-8
GAUSS_BONNET_TOLERANCE = 1e-6
# relative equality band for values that pass through the profile or geodesic ODEs
SOLVER_ROUNDOFF = 1e-10


def _roundoff(scale: float) -> float:
    return 64.0 * EPS * abs(scale)


# ========== 单调性 ==========

def check_monotonicity(
    records: Sequence[DiagnosticsRecord],
    alpha: float,
    a: float,
    conservation_tolerance: float = CONSERVATION_TOLERANCE,
) -> List[CheckReport]:
    """L, A and Δ monotonicity for the area- (α=0) and length-preserving (α=1) flows."""
    names = ("monotonicity.length", "monotonicity.area", "monotonicity.deficit")
    if len(records) < 2:
        return [CheckReport.skipped(n, "fewer than two records") for n in names]
    if alpha not in (0.0, 1.0):
        return [CheckReport.skipped(n, f"no monotonicity statement for alpha={alpha!r}") for n in names]

    first = records[0]
    length0, area0 = first.L, abs(first.A)
    deficit_scale = max(abs(first.Delta), _roundoff(length0 * length0))
    length = ViolationTracker(names[0], _roundoff(length0))
    area = ViolationTracker(names[1], _roundoff(area0))
    deficit = ViolationTracker(names[2], _roundoff(length0 * length0))

    for before, after in zip(records[:-1], records[1:]):
        t = after.t
        # conserved quantities accumulate one rounding per step
        steps = max(after.step - first.step, 1)
        if alpha == 0.0:
            length.add(after.L - before.L, RELATIVE_SLACK * length0, t)
            area.add(abs(after.A - first.A), (RELATIVE_SLACK + conservation_tolerance) * area0, t,
                     roundoff=_roundoff(area0) * steps)
            drift = (4.0 * math.pi + 2.0 * a * a * abs(after.A)) * abs(after.A - before.A)
        else:
            length.add(abs(after.L - first.L), (RELATIVE_SLACK + conservation_tolerance) * length0, t,
                       roundoff=_roundoff(length0) * steps)
            area.add(before.A - after.A, RELATIVE_SLACK * area0, t)
            drift = 2.0 * after.L * abs(after.L - before.L)
        deficit.add(after.Delta - before.Delta, RELATIVE_SLACK * deficit_scale + 1e-12 + drift, t)

    flow = "area-preserving" if alpha == 0.0 else "length-preserving"
    return [
        length.report(f"{flow}: L {'non-increasing' if alpha == 0.0 else 'conserved'}"),
        area.report(f"{flow}: A {'conserved' if alpha == 0.0 else 'non-decreasing'}"),
        deficit.report(f"{flow}: Δ non-increasing"),
    ]


# ========== 半径界 ==========

def check_radius_bounds(
    surface: SurfaceProfile,
    records: Sequence[DiagnosticsRecord],
    snapshots: Sequence[Snapshot],
) -> List[CheckReport]:
    """L ≥ aA on every record; r₁ ≤ ρ₋ ≤ L₀/2, ρ₊ ≤ L₀, ρ₋ ≤ ρ₊ and the deficit bound on snapshots."""
    a = surface.a
    length_area = ViolationTracker("radius.length_area")
    for record in records:
        length_area.add(a * abs(record.A) - record.L, RELATIVE_SLACK * record.L, record.t,
                        roundoff=_roundoff(record.L))
    reports = [length_area.report("L ≥ a·A")]

    names = ("radius.inner_lower", "radius.inner_upper", "radius.outer_upper",
             "radius.ordering", "radius.deficit")
    if not records:
        return reports + [CheckReport.skipped(n, "no records") for n in names]
    length0, area0 = records[0].L, abs(records[0].A)
    try:
        r1 = inner_radius_lower_bound(a, length0, area0)
    except HadamardFlowError as e:
        return reports + [CheckReport.skipped(n, str(e)) for n in names]

    inner_lower, inner_upper, outer_upper, ordering, deficit = (ViolationTracker(n) for n in names)
    for snap in snapshots:
        if snap.rho_minus is None or snap.rho_plus is None:
            continue
        accuracy = snap.radii_accuracy or 0.0
        # radii are only known to the search accuracy
        band = accuracy + _roundoff(length0)
        slack = RELATIVE_SLACK * length0 + band
        rho_minus, rho_plus = snap.rho_minus, snap.rho_plus
        inner_lower.add(r1 - rho_minus, slack, snap.t, roundoff=band)
        inner_upper.add(rho_minus - 0.5 * length0, slack, snap.t, roundoff=band)
        outer_upper.add(rho_plus - length0, slack, snap.t, roundoff=band)
        ordering.add(rho_minus - rho_plus, 2.0 * slack, snap.t, roundoff=2.0 * band)

        curve = snap.curve
        length, area = curve.length, abs(curve.area)
        gap = osserman_gap(a, length, area, rho_minus)
        half = 0.5 * a * rho_minus
        sensitivity = 2.0 * math.sqrt(gap) * area * a * (0.5 * a) / math.sinh(half) ** 2
        delta = length * length - 4.0 * math.pi * area - a * a * area * area
        deficit_band = sensitivity * accuracy + SOLVER_ROUNDOFF * length * length
        deficit.add(gap - delta, RELATIVE_SLACK * length * length + deficit_band, snap.t,
                    roundoff=deficit_band)

    detail = f"r1={r1!r}, L0={length0!r}"
    return reports + [
        inner_lower.report(f"r₁ ≤ ρ₋ ({detail})"),
        inner_upper.report("ρ₋ ≤ L₀/2"),
        outer_upper.report("ρ₊ ≤ L₀"),
        ordering.report("ρ₋ ≤ ρ₊"),
        deficit.report("(L − A·a·coth(aρ₋/2))² ≤ Δ"),
    ]


# ========== Gauss–Bonnet 与凸性 ==========

def check_gauss_bonnet(
    surface: SurfaceProfile,
    records: Sequence[DiagnosticsRecord],
    snapshots: Sequence[Snapshot],
    tolerance: float = GAUSS_BONNET_TOLERANCE,
) -> List[CheckReport]:
    """Residual below tolerance (truncation only) and ∮κ ds ≥ 2π + a²A on pole-enclosing snapshots."""
    residual = ViolationTracker("gauss_bonnet.residual", 0.0, warning_only=True)
    for record in records:
        residual.add(abs(record.gb_residual) - tolerance, 0.0, record.t)

    lower = ViolationTracker("gauss_bonnet.lower_bound")
    a2 = surface.a ** 2
    for snap in snapshots:
        curve = snap.curve
        if curve.winding == 0:
            continue
        total = curve.orientation * float(np.sum(curve.kappa * curve.ds))
        bound = 2.0 * math.pi + a2 * abs(curve.area)
        # equality on 𝒦 ≡ −a² up to the quadrature residual
        band = abs(curve.gauss_bonnet_residual) + _roundoff(bound)
        lower.add(bound - total, band + RELATIVE_SLACK * 2.0 * math.pi, snap.t, roundoff=band)
    return [
        residual.report(f"|∮κ ds − 2π + ∫𝒦 dA| ≤ {tolerance!r}"),
        lower.report("∮κ ds ≥ 2π + a²A"),
    ]


def check_convexity(
    records: Sequence[DiagnosticsRecord],
    a: float,
    slack: float = CONVEXITY_SLACK,
) -> CheckReport:
    """κ_min(t) ≥ min(κ_min(0), a) for convex initial data"""
    name = "convexity"
    if not records:
        return CheckReport.skipped(name, "no records")
    kappa0 = records[0].kappa_min
    if not kappa0 > 0.0:
        return CheckReport.skipped(name, "initial curve is not strictly convex")
    floor = min(kappa0, a)
    tracker = ViolationTracker(name, SOLVER_ROUNDOFF * max(abs(floor), 1.0))
    for record in records:
        tracker.add(floor - record.kappa_min, slack, record.t)
    return tracker.report(f"κ_min ≥ min(κ_min(0), a) = {floor!r}")


def check_curvature_decay(
    records: Sequence[DiagnosticsRecord],
    halt_reason: str,
    threshold: float = DECAY_THRESHOLD,
) -> List[CheckReport]:
    """Converged runs: final sup|κ−h| below threshold, and a non-increasing tail"""
    names = ("curvature_decay.final", "curvature_decay.tail")
    if str(halt_reason) != "converged":
        return [CheckReport.skipped(n, f"run halted with {halt_reason!s}") for n in names]
    final = ViolationTracker(names[0], 0.0)
    final.add(records[-1].sup_kappa_minus_h - threshold, 0.0, records[-1].t)

    # fluctuations at the curvature noise floor are not growth
    tail = ViolationTracker(names[1], SOLVER_ROUNDOFF * max(abs(records[-1].h), 1.0), warning_only=True)
    start = len(records) // 2
    scale = max(records[start].sup_kappa_minus_h, 1e-300)
    for before, after in zip(records[start:-1], records[start + 1:]):
        tail.add(after.sup_kappa_minus_h - before.sup_kappa_minus_h,
                 RELATIVE_SLACK * scale + 1e-12, after.t)
    return [final.report(f"sup|κ − h| < {threshold!r}"), tail.report("eventually non-increasing")]


# ========== Hessian 比较 ==========

def _comparison_curvatures(surface: SurfaceProfile, dist: np.ndarray):
    a, b = surface.a, surface.b
    return a / np.tanh(a * dist), b / np.tanh(b * dist)


def check_hessian_comparison(
    surface: SurfaceProfile,
    curve: CurveLike,
    p0: Location,
    t: Optional[float] = None,
) -> List[CheckReport]:
    """Tangent, normal and mixed Hessian comparison inequalities of r = dist(p0, ·) along the curve."""
    names = ("hessian.tangent", "hessian.normal", "hessian.mixed")
    curve = as_curve(curve)
    try:
        normal, tangent, dist = radial_normal_products(surface, p0, curve)
        circle_kappa, _ = jacobi_curvatures(surface, p0, curve.r, curve.u)
    except HadamardFlowError as e:
        return [CheckReport.skipped(n, str(e)) for n in names]

    lower, upper = _comparison_curvatures(surface, dist)
    tangent_term = circle_kappa * normal ** 2
    normal_term = circle_kappa * tangent ** 2
    mixed_term = -circle_kappa * normal * tangent
    scale = np.maximum(upper, 1.0)
    slack = HESSIAN_SLACK * scale
    band = SOLVER_ROUNDOFF * scale

    trackers = [ViolationTracker(n) for n in names]
    mixed_lower = 0.5 * (lower * (1.0 - 2.0 * tangent * normal) - upper)
    mixed_upper = 0.5 * (upper * (1.0 - 2.0 * tangent * normal) - lower)
    for j in range(curve.n):
        trackers[0].add(max(lower[j] * normal[j] ** 2 - tangent_term[j],
                            tangent_term[j] - upper[j] * normal[j] ** 2), slack[j], t, j,
                        roundoff=band[j])
        trackers[1].add(max(lower[j] * tangent[j] ** 2 - normal_term[j],
                            normal_term[j] - upper[j] * tangent[j] ** 2), slack[j], t, j,
                        roundoff=band[j])
        trackers[2].add(max(mixed_lower[j] - mixed_term[j], mixed_term[j] - mixed_upper[j]),
                        slack[j], t, j, roundoff=band[j])
    return [
        trackers[0].report("a·coth(ar)(1−⟨T,∂r⟩²) ≤ ⟨∇_T∂r,T⟩ ≤ b·coth(br)(1−⟨T,∂r⟩²)"),
        trackers[1].report("a·coth(ar)⟨T,∂r⟩² ≤ ⟨∇_N∂r,N⟩ ≤ b·coth(br)⟨T,∂r⟩²"),
        trackers[2].report("F_{a,b}(r) ≤ ⟨∇_N∂r,T⟩ ≤ F_{b,a}(r)"),
    ]


def check_geodesic_circle_bounds(surface: SurfaceProfile, grid: Optional[np.ndarray] = None) -> CheckReport:
    """a·coth(ar) ≤ φ'/φ ≤ b·coth(br) on the profile grid"""
    r = surface.grid() if grid is None else np.asarray(grid, dtype=float)
    kappa = surface.dphi(r) / surface.phi(r)
    lower, upper = _comparison_curvatures(surface, r)
    violation = np.maximum(lower - kappa, kappa - upper)
    tracker = ViolationTracker("surface.circle_curvature")
    j = int(np.argmax(violation))
    tracker.add(float(violation[j]), HESSIAN_SLACK * float(upper[j]), None, j,
                roundoff=SOLVER_ROUNDOFF * float(upper[j]))
    tracker.checked = r.size
    return tracker.report(f"worst at r={float(r[j])!r}")


# ========== 内切球持续性与支撑函数 ==========

def _initial_bounds(surface: SurfaceProfile, records: Sequence[DiagnosticsRecord]):
    length0, area0 = records[0].L, abs(records[0].A)
    r1 = inner_radius_lower_bound(surface.a, length0, area0)
    tau = persistence_time(surface, length0, area0)
    return length0, area0, r1, tau


def check_inball_persistence(
    surface: SurfaceProfile,
    snapshots: Sequence[Snapshot],
    records: Sequence[DiagnosticsRecord],
) -> List[CheckReport]:
    """For t₀ ≤ t ≤ t₀+τ: r₁/2 ≤ dist(p₀, Γ_t) ≤ L₀ and the shrinking-ball barrier R(t) ≤ dist(p₀, Γ_t)."""
    names = ("inball.distance_lower", "inball.distance_upper", "inball.barrier")
    if not records or not snapshots:
        return [CheckReport.skipped(n, "no snapshots") for n in names]
    try:
        length0, _, r1, tau = _initial_bounds(surface, records)
    except HadamardFlowError as e:
        return [CheckReport.skipped(n, str(e)) for n in names]

    lower, upper, barrier = (ViolationTracker(n) for n in names)
    for origin in snapshots:
        p0 = origin.center_minus
        if p0 is None or origin.rho_minus is None:
            continue
        for later in snapshots:
            elapsed = later.t - origin.t
            if elapsed < 0.0 or elapsed > tau:
                continue
            curve = later.curve
            try:
                dist = solve_geodesics(surface, p0, curve.r, curve.u).distance
            except HadamardFlowError as e:
                logger.warning(f"inball distance failed at t={later.t!r}: {e}")
                continue
            nearest, farthest = float(np.min(dist)), float(np.max(dist))
            accuracy = (later.radii_accuracy or 0.0) + (origin.radii_accuracy or 0.0)
            band = accuracy + _roundoff(length0)
            slack = RELATIVE_SLACK * length0 + band + float(np.max(curve.ds)) ** 2
            lower.add(0.5 * r1 - nearest, slack, later.t, roundoff=band)
            upper.add(farthest - length0, slack, later.t, roundoff=band)
            radius = barrier_radius(surface.b, origin.rho_minus, elapsed)
            barrier.add(radius - nearest, slack, later.t, roundoff=band)
    detail = f"τ={tau!r}, r1={r1!r}"
    return [
        lower.report(f"dist(p₀, Γ_t) ≥ r₁/2 ({detail})"),
        upper.report("dist(p₀, Γ_t) ≤ L₀"),
        barrier.report("cosh(bR) = e^{−b²(t−t₀)}cosh(bρ₋(t₀)) barrier"),
    ]


def check_support_bounds(
    surface: SurfaceProfile,
    snapshots: Sequence[Snapshot],
    records: Sequence[DiagnosticsRecord],
) -> List[CheckReport]:
    """2c ≤ u ≤ sinh(L₀) for the support function about the initial inball center.

    The sinh normalization is hyperbolic; on surfaces with a ≠ 1 violations
    are reported as warnings only.
    """
    names = ("support.lower", "support.upper")
    if not records or not snapshots:
        return [CheckReport.skipped(n, "no snapshots") for n in names]
    kappa0 = records[0].kappa_min
    if not kappa0 > 0.0:
        return [CheckReport.skipped(n, "initial curve is not strictly convex") for n in names]
    origin = snapshots[0]
    if origin.center_minus is None:
        return [CheckReport.skipped(n, "initial inball center unavailable") for n in names]
    try:
        length0, area0, _, tau = _initial_bounds(surface, records)
        floor = support_lower_bound(surface, length0, area0, min(kappa0, surface.a))
    except HadamardFlowError as e:
        return [CheckReport.skipped(n, str(e)) for n in names]

    hyperbolic = surface.a == 1.0
    ceiling = math.sinh(length0)
    band = SOLVER_ROUNDOFF * max(ceiling, 1.0)
    lower = ViolationTracker(names[0], band, warning_only=not hyperbolic)
    upper = ViolationTracker(names[1], band, warning_only=not hyperbolic)
    p0 = origin.center_minus
    for snap in snapshots:
        if snap.t - origin.t > tau:
            continue
        curve = snap.curve
        if not isinstance(p0, Pole) and winding_number(curve, p0) == 0:
            lower.add(math.inf, 0.0, snap.t, note="initial inball center left the region")
            continue
        try:
            values = support_function(surface, p0, curve)
        except HadamardFlowError as e:
            logger.warning(f"support function failed at t={snap.t!r}: {e}")
            continue
        slack = RELATIVE_SLACK * ceiling + float(np.max(curve.ds)) ** 2
        j = int(np.argmin(values))
        lower.add(floor - float(values[j]), slack, snap.t, j)
        k = int(np.argmax(values))
        upper.add(float(values[k]) - ceiling, slack, snap.t, k)
    return [lower.report(f"u ≥ 2c = {floor!r}"), upper.report(f"u ≤ sinh(L₀) = {ceiling!r}")]


def hessian_center(snapshot: Snapshot) -> Location:
    """Base point used for the Hessian comparison of a snapshot"""
    if snapshot.center_minus is not None:
        return snapshot.center_minus
    return POLE
