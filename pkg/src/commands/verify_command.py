"""verify 子命令：对已有运行目录重新执行全部检查"""

import logging
from argparse import Namespace

from ..config.loader import build_surface, parse_scenario
from ..diagnostics import verify_run
from ..diagnostics.types import CheckStatus, VerificationReport
from ..exceptions import RunDirectoryError
from ..logging import RunEventType
from ..persistence import RunDirectory
from ..utils.output import OutputFormatter, OutputLevel
from ..utils.numbers import format_number
from .base import CLIContext, Command, ExitCode

logger = logging.getLogger(__name__)

_STATUS_STYLE = {
    CheckStatus.PASS: "[green]pass[/green]",
    CheckStatus.WARNING: "[yellow]warning[/yellow]",
    CheckStatus.FAILURE: "[red]failure[/red]",
    CheckStatus.SKIPPED: "[dim]skipped[/dim]",
}


def verify_directory(path) -> VerificationReport:
    """Rebuild the surface from scenario.json and check the stored series and snapshots"""
    run_dir = RunDirectory(path)
    run_dir.require(RunDirectory.SCENARIO, RunDirectory.SUMMARY, RunDirectory.TIMESERIES)
    scenario = parse_scenario(run_dir.read_json(RunDirectory.SCENARIO), source=str(run_dir.file(RunDirectory.SCENARIO)))
    surface = build_surface(scenario.surface)
    summary = run_dir.read_json(RunDirectory.SUMMARY)
    try:
        halt_reason = summary["halt_reason"]
        alpha = float(summary["config"]["alpha"])
    except (KeyError, TypeError, ValueError) as e:
        raise RunDirectoryError(f"{run_dir.file(RunDirectory.SUMMARY)} lacks halt_reason/config.alpha: {e}") from e

    records = run_dir.read_timeseries()
    snapshots = run_dir.read_snapshots(summary.get("snapshots") or [], surface)
    report = verify_run(surface, records, snapshots, halt_reason, alpha)
    if scenario.diagnostics.checks:
        report = report.select(scenario.diagnostics.checks)
    return report


class VerifyCommand(Command):
    """Re-run every diagnostics check on a stored run"""

    @property
    def name(self) -> str:
        return "verify"

    @property
    def description(self) -> str:
        return "Verify a run directory; exit 3 on failure-grade violations"

    async def execute(self, args: Namespace, context: CLIContext) -> int:
        report = verify_directory(args.run_dir)
        run_dir = RunDirectory(args.run_dir)
        run_dir.write_json(RunDirectory.VERIFICATION, {**report.to_dict(), "strict": bool(args.strict)})

        for check in report.checks:
            context.log(RunEventType.CHECK_RESULT, run_id=run_dir.path.name, command=self.name,
                        check=check.name, status=check.status.value, worst=check.worst_violation)

        rows = [
            (check.name, _STATUS_STYLE[check.status], format_number(check.worst_violation),
             format_number(check.slack), check.checked)
            for check in report.checks
        ]
        min_level = OutputLevel.NORMAL if report.failures or report.warnings else OutputLevel.VERBOSE
        OutputFormatter.print_table("Verification", ("check", "status", "worst", "slack", "checked"), rows,
                                    min_level=min_level)

        passed = report.passed(strict=args.strict)
        OutputFormatter.print_panel(
            f"{len(report.checks)} checks, {len(report.failures)} failures, {len(report.warnings)} warnings"
            + (" (strict)" if args.strict else ""),
            title=str(run_dir.path),
            ok=passed,
        )
        return ExitCode.OK if passed else ExitCode.VERIFICATION_FAILED
