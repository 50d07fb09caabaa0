"""
场景文件模型（pydantic v2）

所有默认值只在这里定义，README 的默认值表与此一致。未知字段一律拒绝。
"""
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..curve import CurveKind
from ..diagnostics.types import MonitorSettings
from ..flow.types import DtPolicy, FlowConfig, Scheme
from ..geodesics import SearchSettings

SPEC_VERSION = "1.0"


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ========== 曲面 ==========

class ConstantSurface(_Block):
    """𝒦 ≡ −a²"""
    family: Literal["constant_curvature"]
    a: float = Field(gt=0)
    r_max: Optional[float] = Field(default=None, gt=0)
    grid_step: float = Field(default=1e-3, gt=0)


class PinchedSurface(_Block):
    """tanh_pinch / rational_pinch curvature families"""
    family: Literal["tanh_pinch", "rational_pinch"]
    a: float = Field(gt=0)
    b: float = Field(gt=0)
    c: float = Field(default=1.0, gt=0)
    r_max: Optional[float] = Field(default=None, gt=0)
    grid_step: float = Field(default=1e-3, gt=0)

    @model_validator(mode="after")
    def _pinched(self):
        if self.b < self.a:
            raise ValueError(f"pinching requires a <= b, got a={self.a!r}, b={self.b!r}")
        return self


class TabulatedSurface(_Block):
    """User table with header r,phi,dphi,ddphi; a relative path is resolved against the scenario file"""
    family: Literal["tabulated"]
    table_path: str
    a: Optional[float] = Field(default=None, gt=0)
    b: Optional[float] = Field(default=None, gt=0)


SurfaceBlock = Annotated[Union[ConstantSurface, PinchedSurface, TabulatedSurface], Field(discriminator="family")]


# ========== 初始曲线 ==========

class _CurveBlock(_Block):
    samples: int = Field(default=256, ge=16)


class CircleCurve(_CurveBlock):
    kind: Literal["circle"]
    radius: float = Field(gt=0)


class PerturbedCircleCurve(_CurveBlock):
    kind: Literal["perturbed_circle"]
    radius: float = Field(gt=0)
    mode: int = Field(ge=1)
    amplitude: float


class FourierGraphCurve(_CurveBlock):
    kind: Literal["fourier_graph"]
    c0: float = Field(gt=0)
    cos: Dict[int, float] = Field(default_factory=dict)
    sin: Dict[int, float] = Field(default_factory=dict)

    @field_validator("cos", "sin")
    @classmethod
    def _positive_modes(cls, value: Dict[int, float]) -> Dict[int, float]:
        if any(mode < 1 for mode in value):
            raise ValueError("Fourier modes must be >= 1")
        return value


class ChartEllipseCurve(_CurveBlock):
    kind: Literal["chart_ellipse"]
    semi_axes: Tuple[float, float]
    center: Tuple[float, float] = (0.0, 0.0)
    rotation: float = 0.0


InitialBlock = Annotated[
    Union[CircleCurve, PerturbedCircleCurve, FourierGraphCurve, ChartEllipseCurve],
    Field(discriminator="kind"),
]


# ========== 流与步长 ==========

class FixedStep(_Block):
    policy: Literal["fixed"]
    dt: float = Field(gt=0)


class CflStep(_Block):
    policy: Literal["cfl"]
    safety: float = Field(default=0.8, gt=0, le=1)


StepBlock = Annotated[Union[FixedStep, CflStep], Field(discriminator="policy")]


class FlowBlock(_Block):
    alpha: float = Field(default=0.0, ge=0)
    scheme: Scheme = Scheme.EXPLICIT_RK4
    step: StepBlock = Field(default_factory=lambda: CflStep(policy="cfl"))
    implicit_factor: float = Field(default=10.0, ge=1, le=50)
    redistribution_stride: int = Field(default=0, ge=0)
    feedback_gain: float = Field(default=0.0, ge=0)
    feedback_time_scale: float = Field(default=1.0, gt=0)
    t_end: float = Field(default=1.0, gt=0)
    max_steps: int = Field(default=10_000_000, ge=1)
    kappa_ceiling: Optional[float] = Field(default=None, gt=0)
    escape_radius: Optional[float] = Field(default=None, gt=0)
    embeddedness_stride: int = Field(default=10, ge=0)
    slope_ceiling: float = Field(default=10.0, gt=0)
    convergence_tolerance: float = Field(default=1e-6, gt=0)
    convergence_radius_tolerance: float = Field(default=1e-6, gt=0)
    convergence_strides: int = Field(default=100, ge=1)
    stop_on_convergence: bool = True

    def to_flow_config(self) -> FlowConfig:
        values = self.model_dump(exclude={"step"})
        if isinstance(self.step, FixedStep):
            values.update(dt_policy=DtPolicy.FIXED, dt=self.step.dt)
        else:
            values.update(dt_policy=DtPolicy.CFL, safety=self.step.safety)
        return FlowConfig(**values)


# ========== 诊断、输出与谱实验 ==========

class DiagnosticsBlock(_Block):
    stride: int = Field(default=1, ge=1)
    radii: bool = True
    support: bool = True
    grid_size: int = Field(default=16, ge=2)
    evaluation_budget: int = Field(default=200, ge=10)
    coarse_targets: int = Field(default=64, ge=8)
    checks: Optional[List[str]] = None


class OutputBlock(_Block):
    directory: Optional[str] = None
    snapshot_stride: int = Field(default=0, ge=0)
    svg: bool = True
    svg_size: int = Field(default=640, ge=100)
    svg_curves: int = Field(default=8, ge=1)


class SpectrumBlock(_Block):
    radius: float = Field(gt=0)
    epsilon: float = Field(default=1e-3, gt=0)
    modes: List[int] = Field(default_factory=lambda: [1, 2, 3])
    samples: int = Field(default=256, ge=16)

    @field_validator("modes")
    @classmethod
    def _modes(cls, value: List[int]) -> List[int]:
        if not value or any(mode < 1 for mode in value):
            raise ValueError("modes must be a non-empty list of integers >= 1")
        return sorted(set(value))


class Scenario(_Block):
    """Complete scenario document"""
    spec_version: Literal["1.0"]
    name: str = "scenario"
    seed: int = 0
    surface: SurfaceBlock
    initial: Optional[InitialBlock] = None
    flow: FlowBlock = Field(default_factory=FlowBlock)
    diagnostics: DiagnosticsBlock = Field(default_factory=DiagnosticsBlock)
    output: OutputBlock = Field(default_factory=OutputBlock)
    spectrum: Optional[SpectrumBlock] = None

    @field_validator("name")
    @classmethod
    def _name(cls, value: str) -> str:
        if not value or Path(value).name != value:
            raise ValueError("name must be a plain file name")
        return value

    def initial_params(self) -> Tuple[CurveKind, dict, int]:
        """(kind, params, samples) for curve.initial_curve"""
        if self.initial is None:
            raise ValueError("scenario has no initial curve block")
        params = self.initial.model_dump(exclude={"kind", "samples"})
        return CurveKind(self.initial.kind), params, self.initial.samples

    def monitor_settings(self) -> MonitorSettings:
        block = self.diagnostics
        search = SearchSettings(block.grid_size, block.evaluation_budget, block.coarse_targets, self.seed)
        return MonitorSettings(
            diagnostics_stride=block.stride,
            snapshot_stride=self.output.snapshot_stride,
            radii=block.radii,
            support=block.support,
            search=search,
        )
