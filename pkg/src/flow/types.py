"""
曲率流模块数据类型定义
"""
import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..curve import DiscreteCurve, RadialGraph
from ..diagnostics.types import DiagnosticsRecord, Snapshot
from ..exceptions import HadamardFlowError, ParameterError

CurveState = Union[DiscreteCurve, RadialGraph]


class Scheme(str, Enum):
    """时间积分格式"""
    EXPLICIT_RK4 = "explicit-rk4"
    SEMI_IMPLICIT_GRAPH = "semi-implicit-graph"


class DtPolicy(str, Enum):
    """步长策略"""
    FIXED = "fixed"
    CFL = "cfl"


class HaltReason(str, Enum):
    """运行结束原因"""
    COMPLETED = "completed"
    CONVERGED = "converged"
    BLOW_UP = "blow-up"
    ESCAPE = "escape"
    EMBEDDEDNESS_LOSS = "embeddedness-loss"
    GRAPH_BREAKDOWN = "graph-breakdown"

    @property
    def is_singular(self) -> bool:
        return self in (HaltReason.BLOW_UP, HaltReason.ESCAPE, HaltReason.EMBEDDEDNESS_LOSS,
                        HaltReason.GRAPH_BREAKDOWN)


# 同时触发时的报告优先级
HALT_PRIORITY = (HaltReason.BLOW_UP, HaltReason.ESCAPE, HaltReason.EMBEDDEDNESS_LOSS,
                 HaltReason.GRAPH_BREAKDOWN)


class FlowHalted(HadamardFlowError):
    """Raised by a step when a halt condition is met"""

    def __init__(self, reason: HaltReason, detail: str = "", state: Optional["FlowState"] = None):
        self.reason = reason
        self.detail = detail
        self.state = state
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)


@dataclass
class FlowConfig:
    """Constrained-flow configuration

    alpha=0 preserves area, alpha=1 preserves length; any alpha >= 0 runs.
    kappa_ceiling / escape_radius default to 10³·max(κ_max(0), b) and
    r_max − 5·grid_step when left unset (see resolve_thresholds).
    """
    alpha: float = 0.0
    scheme: Scheme = Scheme.EXPLICIT_RK4
    dt_policy: DtPolicy = DtPolicy.CFL
    dt: float = 1e-4
    safety: float = 0.8
    implicit_factor: float = 10.0
    redistribution_stride: int = 0
    feedback_gain: float = 0.0
    feedback_time_scale: float = 1.0
    t_end: float = 1.0
    max_steps: int = 10_000_000
    kappa_ceiling: Optional[float] = None
    escape_radius: Optional[float] = None
    embeddedness_stride: int = 10
    slope_ceiling: float = 10.0
    convergence_tolerance: float = 1e-6
    convergence_radius_tolerance: float = 1e-6
    convergence_strides: int = 100
    stop_on_convergence: bool = True

    def __post_init__(self):
        self.scheme = Scheme(self.scheme)
        self.dt_policy = DtPolicy(self.dt_policy)
        self.validate()

    def validate(self) -> None:
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise ParameterError(f"alpha must be a finite non-negative number, got {self.alpha!r}")
        if not 0.0 < self.safety <= 1.0:
            raise ParameterError(f"CFL safety factor must lie in (0, 1], got {self.safety!r}")
        if not 1.0 <= self.implicit_factor <= 50.0:
            raise ParameterError(f"implicit dt factor must lie in [1, 50], got {self.implicit_factor!r}")
        if self.dt_policy == DtPolicy.FIXED and not self.dt > 0.0:
            raise ParameterError(f"fixed time step must be positive, got {self.dt!r}")
        if not self.t_end > 0.0:
            raise ParameterError(f"t_end must be positive, got {self.t_end!r}")
        for name in ("redistribution_stride", "embeddedness_stride"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0")
        if self.feedback_gain < 0.0 or not self.feedback_time_scale > 0.0:
            raise ParameterError("feedback gain must be >= 0 and its time scale positive")
        if self.convergence_strides < 1:
            raise ParameterError("convergence_strides must be >= 1")

    @property
    def preserves_area_or_length(self) -> bool:
        """alpha ∈ {0, 1}: the constrained flows the monotonicity statements cover"""
        return self.alpha in (0.0, 1.0)

    def with_thresholds(self, kappa_ceiling: float, escape_radius: float) -> "FlowConfig":
        return replace(self, kappa_ceiling=kappa_ceiling, escape_radius=escape_radius)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["scheme"] = self.scheme.value
        data["dt_policy"] = self.dt_policy.value
        return data


@dataclass
class FlowState:
    """Curve at time t together with the conserved reference quantities"""
    t: float
    curve: CurveState
    step: int = 0
    h: float = math.nan
    dt_used: float = 0.0
    reference_area: float = math.nan
    reference_length: float = math.nan

    def advance(self, curve: CurveState, dt: float, h: float) -> "FlowState":
        return replace(self, t=self.t + dt, curve=curve, step=self.step + 1, h=h, dt_used=dt)


@dataclass
class RunRecord:
    """Diagnostics time series, snapshots and halt reason of one run"""
    surface_id: str
    config: FlowConfig
    records: List[DiagnosticsRecord] = field(default_factory=list)
    snapshots: List[Snapshot] = field(default_factory=list)
    halt_reason: HaltReason = HaltReason.COMPLETED
    halt_detail: str = ""
    final_state: Optional[FlowState] = None
    initial_kappa_min: float = math.nan
    mu_average: float = math.nan

    @property
    def converged(self) -> bool:
        return self.halt_reason == HaltReason.CONVERGED

    def summary(self) -> Dict[str, Any]:
        first = self.records[0] if self.records else None
        last = self.records[-1] if self.records else None
        final_curve = self.final_state.curve if self.final_state else None
        r = final_curve.r if final_curve is not None else None
        return {
            "surface": self.surface_id,
            "halt_reason": self.halt_reason.value,
            "halt_detail": self.halt_detail,
            "steps": self.final_state.step if self.final_state else 0,
            "t_final": self.final_state.t if self.final_state else 0.0,
            "L0": first.L if first else None,
            "A0": first.A if first else None,
            "L_final": last.L if last else None,
            "A_final": last.A if last else None,
            "h_final": last.h if last else None,
            "mu_average_final": self.mu_average,
            "kappa_min_initial": self.initial_kappa_min,
            "final_r_min": float(r.min()) if r is not None else None,
            "final_r_max": float(r.max()) if r is not None else None,
            "final_radius_deviation": float(np.max(np.abs(r - np.mean(r)))) if r is not None else None,
            "records": len(self.records),
            "snapshots": [s.to_dict() for s in self.snapshots],
            "config": self.config.to_dict(),
        }
