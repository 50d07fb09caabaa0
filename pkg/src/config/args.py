import argparse
from typing import List, Optional

from ..exceptions import ScenarioError
from ..surface.constants import INFO_TABLE_ROWS
from .loader import DEFAULT_SETTINGS_PATH

SUBCOMMANDS = ("run", "spectrum", "verify", "surface-info")


def parse_modes(text: str) -> List[int]:
    """'1,2,3' -> [1, 2, 3]"""
    try:
        modes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"modes must be comma-separated integers, got {text!r}")
    if not modes or any(mode < 1 for mode in modes):
        raise argparse.ArgumentTypeError(f"modes must be integers >= 1, got {text!r}")
    return modes


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors through ScenarioError instead of exiting"""

    def error(self, message):
        raise ScenarioError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hflow",
        description="Constrained curvature flows on pinched Hadamard surfaces"
    )

    # 输出级别参数（互斥）
    output_group = parser.add_mutually_exclusive_group()
    output_group.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Enable verbose output"
    )
    output_group.add_argument(
        "--quiet", "-q",
        action="store_true",
        help="Quiet mode (only show errors and results)"
    )

    parser.add_argument(
        "--config",
        default=DEFAULT_SETTINGS_PATH,
        help=f"Path to settings file (default: {DEFAULT_SETTINGS_PATH})"
    )

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    subparsers.required = True

    run = subparsers.add_parser("run", help="Run a flow scenario (or a directory of scenarios)")
    run.add_argument("--scenario", required=True, help="Scenario JSON file or directory of scenario files")
    run.add_argument("--out", help="Output directory (default: output.directory of the scenario)")

    spectrum = subparsers.add_parser("spectrum", help="Fit linearized decay rates of circle perturbations")
    spectrum.add_argument("--scenario", required=True, help="Scenario JSON file with a spectrum block")
    spectrum.add_argument("--out", help="Output directory")
    spectrum.add_argument("--modes", type=parse_modes, help="Comma-separated mode list, e.g. 1,2,3")

    verify = subparsers.add_parser("verify", help="Re-run every diagnostics check on a run directory")
    verify.add_argument("run_dir", metavar="RUN_DIR", help="Output directory of a previous run")
    verify.add_argument("--strict", action="store_true", help="Treat warnings as failures")

    info = subparsers.add_parser("surface-info", help="Tabulate φ, 𝒦 and ψ of a scenario surface")
    info.add_argument("--scenario", required=True, help="Scenario JSON file")
    info.add_argument("--out", help="Output directory")
    info.add_argument("--rows", type=int, default=INFO_TABLE_ROWS,
                      help=f"Rows of the printed table (default: {INFO_TABLE_ROWS})")

    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """解析命令行参数"""
    return build_parser().parse_args(argv)
