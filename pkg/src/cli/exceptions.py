"""Exit-code mapping for the CLI interface"""

from ..commands.base import ExitCode
from ..exceptions import RunDirectoryError, ScenarioError
from ..flow.types import FlowHalted


def exit_code_for(error: BaseException) -> ExitCode:
    """A halt that escaped its run is singular; every other error is a usage error"""
    if isinstance(error, FlowHalted):
        return ExitCode.SINGULAR_HALT
    return ExitCode.USAGE


def describe(error: BaseException) -> str:
    """One-line stderr message"""
    if isinstance(error, (ScenarioError, RunDirectoryError)):
        return str(error)
    return f"{type(error).__name__}: {error}"
