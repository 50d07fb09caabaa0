"""Commands module exports"""

from .base import CLIContext, Command, CommandRegistry, ExitCode, command_registry
from .run_command import RunCommand, run_scenario_file
from .spectrum_command import SpectrumCommand, run_mode
from .verify_command import VerifyCommand, verify_directory
from .surface_command import SurfaceInfoCommand


def register_builtin_commands(registry: CommandRegistry = command_registry) -> CommandRegistry:
    """注册所有子命令"""
    registry.register(RunCommand())
    registry.register(SpectrumCommand())
    registry.register(VerifyCommand())
    registry.register(SurfaceInfoCommand())
    return registry


__all__ = [
    "CLIContext",
    "Command",
    "CommandRegistry",
    "ExitCode",
    "command_registry",
    "register_builtin_commands",
    "RunCommand",
    "SpectrumCommand",
    "VerifyCommand",
    "SurfaceInfoCommand",
    "run_scenario_file",
    "run_mode",
    "verify_directory",
]
