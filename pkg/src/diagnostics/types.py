"""
诊断模块数据类型定义

DiagnosticsRecord - 单个诊断时刻的全部量（时间序列 CSV 的一行）
Snapshot          - 曲线快照及其内切/外接球心
CheckReport       - 单项检查结果
SpectrumReport    - 模态衰减实验结果
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..curve import DiscreteCurve
from ..geodesics import Location, SearchSettings, location_from_dict
from ..surface import SurfaceProfile, predicted_rate
from ..utils.numbers import json_number

# 时间序列 CSV 的固定列顺序，附加列在后
TIMESERIES_COLUMNS = (
    "step", "t", "L", "A", "Delta", "h", "kappa_min", "kappa_max",
    "sup_kappa_minus_h", "gb_residual", "r_min", "r_max", "rho_minus", "rho_plus",
    "u_supp_min", "dt_used",
)
EXTRA_COLUMNS = ("u_supp_max", "kappa_energy")
ALL_COLUMNS = TIMESERIES_COLUMNS + EXTRA_COLUMNS
SNAPSHOT_COLUMNS = ("j", "u", "r", "kappa", "ds")


@dataclass
class DiagnosticsRecord:
    """One row of the diagnostics time series"""
    step: int
    t: float
    L: float
    A: float
    Delta: float
    h: float
    kappa_min: float
    kappa_max: float
    sup_kappa_minus_h: float
    gb_residual: float
    r_min: float
    r_max: float
    rho_minus: Optional[float] = None
    rho_plus: Optional[float] = None
    u_supp_min: Optional[float] = None
    dt_used: float = 0.0
    u_supp_max: Optional[float] = None
    kappa_energy: float = 0.0
    margins: Dict[str, float] = field(default_factory=dict, repr=False)

    def to_row(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in ALL_COLUMNS}

    @classmethod
    def from_row(cls, row: Dict[str, Optional[float]]) -> "DiagnosticsRecord":
        values = {name: row.get(name) for name in ALL_COLUMNS}
        values["step"] = int(values["step"])
        if values.get("dt_used") is None:
            values["dt_used"] = 0.0
        if values.get("kappa_energy") is None:
            values["kappa_energy"] = 0.0
        return cls(**values)

    def is_finite(self) -> bool:
        required = (self.t, self.L, self.A, self.Delta, self.h, self.kappa_min, self.kappa_max,
                    self.sup_kappa_minus_h, self.gb_residual, self.r_min, self.r_max)
        return all(v is not None and math.isfinite(v) for v in required)


@dataclass
class Snapshot:
    """Curve snapshot with its inball/circumball centers when computed"""
    step: int
    t: float
    curve: DiscreteCurve
    center_minus: Optional[Location] = None
    center_plus: Optional[Location] = None
    rho_minus: Optional[float] = None
    rho_plus: Optional[float] = None
    radii_accuracy: Optional[float] = None

    @property
    def filename(self) -> str:
        return f"snapshot_{self.step}.csv"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "step": self.step,
            "t": self.t,
            "file": self.filename,
            "center_minus": self.center_minus.to_dict() if self.center_minus is not None else None,
            "center_plus": self.center_plus.to_dict() if self.center_plus is not None else None,
            "rho_minus": self.rho_minus,
            "rho_plus": self.rho_plus,
            "radii_accuracy": self.radii_accuracy,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], curve: DiscreteCurve) -> "Snapshot":
        def location(key):
            value = data.get(key)
            return location_from_dict(value) if value else None

        return cls(
            step=int(data["step"]),
            t=float(data["t"]),
            curve=curve,
            center_minus=location("center_minus"),
            center_plus=location("center_plus"),
            rho_minus=data.get("rho_minus"),
            rho_plus=data.get("rho_plus"),
            radii_accuracy=data.get("radii_accuracy"),
        )


@dataclass
class MonitorSettings:
    """Diagnostics emission strides and the optional expensive quantities"""
    diagnostics_stride: int = 1
    snapshot_stride: int = 0
    radii: bool = True
    support: bool = True
    search: SearchSettings = field(default_factory=SearchSettings)

    def wants_record(self, step: int) -> bool:
        return self.diagnostics_stride > 0 and step % self.diagnostics_stride == 0

    def wants_snapshot(self, step: int) -> bool:
        return self.snapshot_stride > 0 and step % self.snapshot_stride == 0


class CheckStatus(str, Enum):
    """检查状态"""
    PASS = "pass"
    WARNING = "warning"
    FAILURE = "failure"
    SKIPPED = "skipped"


_SEVERITY = {CheckStatus.SKIPPED: 0, CheckStatus.PASS: 1, CheckStatus.WARNING: 2, CheckStatus.FAILURE: 3}


@dataclass
class CheckReport:
    """Outcome of one inequality family.

    worst_violation is max(LHS − RHS) over everything checked (≤ 0 means
    every instance holds exactly); slack is the allowance used to separate
    truncation error from a genuine violation.
    """
    name: str
    status: CheckStatus
    worst_violation: float = -math.inf
    slack: float = 0.0
    t: Optional[float] = None
    sample: Optional[int] = None
    checked: int = 0
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "status": self.status.value,
            "worst_slack": json_number(self.worst_violation),
            "slack": json_number(self.slack),
            "location": {"t": json_number(self.t), "sample": self.sample},
            "checked": self.checked,
            "detail": self.detail,
        }

    @classmethod
    def skipped(cls, name: str, detail: str) -> "CheckReport":
        return cls(name=name, status=CheckStatus.SKIPPED, detail=detail)


class ViolationTracker:
    """Accumulates LHS − RHS values against a slack and yields a CheckReport"""

    def __init__(self, name: str, roundoff: float = 0.0, warning_only: bool = False):
        self.name = name
        self.roundoff = roundoff
        self.warning_only = warning_only
        self.worst = -math.inf
        self.worst_slack = 0.0
        self.status = CheckStatus.PASS
        self.t: Optional[float] = None
        self.sample: Optional[int] = None
        self.checked = 0
        self.notes: List[str] = []

    def add(self, violation: float, slack: float, t: Optional[float] = None,
            sample: Optional[int] = None, note: str = "",
            roundoff: Optional[float] = None) -> None:
        """Grade one value; roundoff overrides the tracker band for this value only"""
        self.checked += 1
        if not math.isfinite(violation):
            violation = math.inf
        if violation <= (self.roundoff if roundoff is None else roundoff):
            status = CheckStatus.PASS
        elif violation <= slack or self.warning_only:
            status = CheckStatus.WARNING
        else:
            status = CheckStatus.FAILURE
        if violation > self.worst:
            self.worst, self.worst_slack, self.t, self.sample = violation, slack, t, sample
        if _SEVERITY[status] > _SEVERITY[self.status]:
            self.status = status
            if note:
                self.notes.append(note)

    def report(self, detail: str = "") -> CheckReport:
        if self.checked == 0:
            return CheckReport.skipped(self.name, detail or "nothing to check")
        text = "; ".join(filter(None, [detail] + self.notes))
        return CheckReport(self.name, self.status, self.worst, self.worst_slack,
                           self.t, self.sample, self.checked, text)


@dataclass
class VerificationReport:
    """All check reports for one run"""
    checks: List[CheckReport] = field(default_factory=list)

    def add(self, report: CheckReport) -> None:
        self.checks.append(report)

    @property
    def failures(self) -> List[CheckReport]:
        return [c for c in self.checks if c.status == CheckStatus.FAILURE]

    @property
    def warnings(self) -> List[CheckReport]:
        return [c for c in self.checks if c.status == CheckStatus.WARNING]

    def passed(self, strict: bool = False) -> bool:
        return not self.failures and not (strict and self.warnings)

    def select(self, names: Sequence[str]) -> "VerificationReport":
        """Checks named exactly or by family prefix ("monotonicity" keeps monotonicity.*)"""
        def wanted(check: str) -> bool:
            base = check.split("@")[0]
            return any(base == name or base.startswith(name + ".") for name in names)

        return VerificationReport([c for c in self.checks if wanted(c.name)])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checks": [c.to_dict() for c in self.checks],
            "failures": len(self.failures),
            "warnings": len(self.warnings),
        }


@dataclass
class FitResult:
    """Least-squares fit of log|value| against t"""
    rate: float
    intercept: float
    r_squared: float
    window: Tuple[float, float]
    points: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rate": self.rate,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "window": list(self.window),
            "points": self.points,
        }


@dataclass
class SpectrumEntry:
    """Predicted and fitted decay rate of one mode"""
    mode: int
    predicted: float
    fitted: float
    relative_error: float
    window: Tuple[float, float]
    r_squared: float = math.nan

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "predicted": self.predicted,
            "fitted": self.fitted,
            "relative_error": json_number(self.relative_error),
            "window": list(self.window),
            "r_squared": json_number(self.r_squared),
        }


@dataclass
class SpectrumReport:
    """Mode experiments about the geodesic circle of a given radius"""
    surface_id: str
    radius: float
    epsilon: float
    entries: List[SpectrumEntry] = field(default_factory=list)
    inconclusive: List[int] = field(default_factory=list)

    def add(self, entry: SpectrumEntry) -> None:
        self.entries.append(entry)
        self.entries.sort(key=lambda e: e.mode)

    def recompute_predictions(self, surface: SurfaceProfile) -> None:
        """Refresh λ_i from the profile (the stored value is never trusted on read)"""
        for entry in self.entries:
            entry.predicted = predicted_rate(surface, self.radius, entry.mode)
            entry.relative_error = relative_error(entry.fitted, entry.predicted)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "surface": self.surface_id,
            "radius": self.radius,
            "epsilon": self.epsilon,
            "entries": [e.to_dict() for e in self.entries],
            "inconclusive": sorted(self.inconclusive),
        }


def relative_error(fitted: float, predicted: float) -> float:
    """|fitted − predicted|/|predicted|; absolute error when the prediction vanishes"""
    if abs(predicted) < 1e-12:
        return abs(fitted - predicted)
    return abs(fitted - predicted) / abs(predicted)
