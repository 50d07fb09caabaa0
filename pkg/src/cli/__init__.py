"""CLI entry point and exit-code mapping"""

from .exceptions import describe, exit_code_for
from .main import cli, main

__all__ = ["cli", "main", "describe", "exit_code_for"]
