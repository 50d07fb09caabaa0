"""
异常层次定义

所有数值模块抛出的异常都继承自 HadamardFlowError，CLI 层据此映射退出码。
"""
from typing import Optional


class HadamardFlowError(Exception):
    """Base class for every error raised by the package."""
    pass


class ParameterError(HadamardFlowError, ValueError):
    """Invalid input parameter (non-positive constant, bad resolution, ...)."""
    pass


class DomainError(HadamardFlowError, ValueError):
    """Evaluation requested outside the domain of a function."""
    pass


class SurfaceConstructionError(HadamardFlowError):
    """A tabulated profile failed one of its post-construction invariants."""

    def __init__(self, invariant: str, r: float, detail: str = ""):
        self.invariant = invariant
        self.r = r
        message = f"surface invariant '{invariant}' violated at r={r!r}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class GeodesicRangeError(HadamardFlowError):
    """A geodesic left the tabulated annulus."""

    def __init__(self, exit_arclength: float, r: float):
        self.exit_arclength = exit_arclength
        self.r = r
        super().__init__(
            f"geodesic left the tabulated annulus at arclength {exit_arclength!r} (r={r!r})"
        )


class NumericalDegeneracyError(HadamardFlowError):
    """Degenerate discrete data (coincident samples, vanishing speed, non-finite values)."""
    pass


class PreconditionError(HadamardFlowError):
    """A geometric precondition does not hold (point outside curve, self-intersection)."""
    pass


class ExperimentInconclusiveError(HadamardFlowError):
    """A fit or experiment could not produce a result."""
    pass


class InternalSolverError(HadamardFlowError):
    """A solver that cannot fail on valid input failed anyway."""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class ScenarioError(HadamardFlowError):
    """Scenario file or command-line usage error."""
    pass


class RunDirectoryError(HadamardFlowError):
    """A run directory is missing files needed by verify."""
    pass
