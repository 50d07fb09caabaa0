"""
曲率流模块

约束曲率流 ∂t γ = (h − κ)N 的参数化与径向图积分、运行驱动与模态实验。
"""
from .types import (
    HALT_PRIORITY,
    CurveState,
    DtPolicy,
    FlowConfig,
    FlowHalted,
    FlowState,
    HaltReason,
    RunRecord,
    Scheme,
)
from .global_term import global_term, mu_weighted_average
from .parametric import check_halt, effective_h, resolve_thresholds, step_parametric, time_step
from .graph import step_graph
from .run import prepare_initial, run, run_to_time
from .experiment import ModeSeries, fit_mode, mode_experiment, mode_series, spectrum, validate_experiment

__all__ = [
    "HALT_PRIORITY",
    "CurveState",
    "DtPolicy",
    "FlowConfig",
    "FlowHalted",
    "FlowState",
    "HaltReason",
    "RunRecord",
    "Scheme",
    "global_term",
    "mu_weighted_average",
    "check_halt",
    "effective_h",
    "resolve_thresholds",
    "step_parametric",
    "time_step",
    "step_graph",
    "prepare_initial",
    "run",
    "run_to_time",
    "ModeSeries",
    "fit_mode",
    "mode_experiment",
    "validate_experiment",
    "mode_series",
    "spectrum",
]
