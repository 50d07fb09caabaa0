"""spectrum 子命令：圆周扰动模态衰减率与线性化预测的对比"""

import logging
from argparse import Namespace
from pathlib import Path
from typing import List, Optional

from ..config.loader import build_surface, load_scenario
from ..config.schema import Scenario
from ..diagnostics.types import SpectrumEntry, SpectrumReport
from ..exceptions import ExperimentInconclusiveError, ScenarioError
from ..flow import mode_experiment, validate_experiment
from ..logging import RunEventType
from ..persistence import RunDirectory, Series, line_plot
from ..surface import predicted_rate
from ..utils.output import OutputFormatter
from ..utils.numbers import format_number
from .base import CLIContext, Command, ExitCode

logger = logging.getLogger(__name__)


def _spectrum_block(scenario: Scenario):
    if scenario.spectrum is None:
        raise ScenarioError(f"scenario '{scenario.name}' has no 'spectrum' block")
    return scenario.spectrum


def run_mode(scenario_path: str, mode: int) -> Optional[SpectrumEntry]:
    """One mode experiment; None when inconclusive. Module-level for worker processes."""
    path = Path(scenario_path)
    scenario = load_scenario(path)
    block = _spectrum_block(scenario)
    surface = build_surface(scenario.surface, path.parent)
    try:
        return mode_experiment(surface, block.radius, mode, block.epsilon,
                               scenario.flow.to_flow_config(), block.samples)
    except ExperimentInconclusiveError as e:
        logger.warning(f"mode {mode} inconclusive: {e}")
        return None


def spectrum_svg(report: SpectrumReport, title: str, size: int) -> str:
    entries = report.entries
    modes = [e.mode for e in entries]
    series = [
        Series("predicted λ_i", modes, [e.predicted for e in entries], markers=True),
        Series("fitted rate", modes, [e.fitted for e in entries], markers=True),
    ]
    return line_plot(series, title, "mode i", "decay rate", size)


class SpectrumCommand(Command):
    """Fit the decay rates of the Fourier modes of a perturbed geodesic circle"""

    @property
    def name(self) -> str:
        return "spectrum"

    @property
    def description(self) -> str:
        return "Compare fitted mode decay rates with the linearized spectrum"

    async def execute(self, args: Namespace, context: CLIContext) -> int:
        path = Path(args.scenario).expanduser()
        scenario = load_scenario(path)
        block = _spectrum_block(scenario)
        modes: List[int] = sorted(set(args.modes)) if args.modes else list(block.modes)

        surface = build_surface(scenario.surface, path.parent)
        for mode in modes:
            validate_experiment(surface, block.radius, mode, block.epsilon)

        entries = await context.map(run_mode, [(str(path), mode) for mode in modes])
        report = SpectrumReport(surface.surface_id, block.radius, block.epsilon)
        for mode, entry in zip(modes, entries):
            if entry is None:
                report.inconclusive.append(mode)
            else:
                report.add(entry)
        report.recompute_predictions(surface)

        out = args.out or scenario.output.directory or str(Path(context.default_output) / scenario.name)
        run_dir = RunDirectory(out).create()
        run_dir.write_json(RunDirectory.SPECTRUM, {
            "name": scenario.name,
            "spec_version": scenario.spec_version,
            **report.to_dict(),
        })
        if scenario.output.svg:
            title = f"{scenario.name}: decay rates about r = {block.radius!r}"
            run_dir.write_text(RunDirectory.SPECTRUM_SVG, spectrum_svg(report, title, scenario.output.svg_size))

        for entry in report.entries:
            context.log(RunEventType.EXPERIMENT, run_id=scenario.name, command=self.name, **entry.to_dict())
        rows = [
            (e.mode, format_number(e.predicted), format_number(e.fitted), f"{100 * e.relative_error:.3g}%")
            for e in report.entries
        ]
        rows += [(mode, format_number(predicted_rate(surface, block.radius, mode)), "inconclusive", "")
                 for mode in report.inconclusive]
        OutputFormatter.print_table(f"Spectrum about r = {block.radius!r}",
                                    ("mode", "predicted", "fitted", "rel. error"), rows)
        if report.inconclusive:
            OutputFormatter.warning(f"inconclusive modes: {', '.join(map(str, report.inconclusive))}")
        OutputFormatter.success(f"spectrum written to {run_dir.path}")
        return ExitCode.OK
