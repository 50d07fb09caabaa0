"""run 子命令：单个场景或场景目录"""

import logging
from argparse import Namespace
from pathlib import Path
from typing import Any, Dict, List, Tuple

from ..config.loader import build_initial, build_surface, load_scenario
from ..config.schema import Scenario, TabulatedSurface
from ..curve import as_curve
from ..diagnostics.types import DiagnosticsRecord
from ..exceptions import ScenarioError
from ..flow import run
from ..logging import RunEventType
from ..persistence import RunDirectory, curves_plot
from ..utils.output import OutputFormatter
from ..utils.numbers import format_number
from .base import CLIContext, Command, ExitCode

logger = logging.getLogger(__name__)


def normalized_scenario(scenario: Scenario, base_dir: Path) -> Scenario:
    """Tabulated surfaces get an absolute table path so the run directory is self-contained"""
    block = scenario.surface
    if isinstance(block, TabulatedSurface):
        table_path = Path(block.table_path).expanduser()
        if not table_path.is_absolute():
            table_path = (base_dir / table_path).resolve()
        scenario = scenario.model_copy(update={"surface": block.model_copy(update={"table_path": str(table_path)})})
    return scenario


def _echo_record(record: DiagnosticsRecord) -> None:
    OutputFormatter.debug(
        f"step {record.step}  t={format_number(record.t)}  L={format_number(record.L)}  "
        f"A={format_number(record.A)}  Δ={format_number(record.Delta)}  h={format_number(record.h)}"
    )


def run_scenario_file(scenario_path: str, out_dir: str, echo: bool = False) -> Dict[str, Any]:
    """Run one scenario and write its output directory.

    Module-level so batch runs can ship it to worker processes.
    """
    path = Path(scenario_path)
    scenario = normalized_scenario(load_scenario(path), path.parent)
    surface = build_surface(scenario.surface, path.parent)
    initial = build_initial(scenario, surface)
    config = scenario.flow.to_flow_config()

    run_dir = RunDirectory(out_dir).create()
    run_dir.write_json(RunDirectory.SCENARIO, scenario.model_dump(mode="json"))
    result = run(surface, initial, config, scenario.monitor_settings(),
                 on_record=_echo_record if echo else None,
                 on_snapshot=run_dir.write_snapshot)
    run_dir.write_timeseries(result.records)

    summary = {"name": scenario.name, "spec_version": scenario.spec_version, "seed": scenario.seed}
    summary.update(result.summary())
    run_dir.write_json(RunDirectory.SUMMARY, summary)

    if scenario.output.svg:
        if result.snapshots:
            curves = [s.curve for s in result.snapshots]
            labels = [f"t = {s.t:.4g}" for s in result.snapshots]
        else:
            curves = [as_curve(initial), as_curve(result.final_state.curve)]
            labels = ["t = 0", f"t = {result.final_state.t:.4g}"]
        svg = curves_plot(curves, labels, f"{scenario.name}: {result.halt_reason.value}",
                          scenario.output.svg_size, scenario.output.svg_curves)
        run_dir.write_text(RunDirectory.CURVES_SVG, svg)

    code = ExitCode.SINGULAR_HALT if result.halt_reason.is_singular else ExitCode.OK
    return {
        "name": scenario.name,
        "out": str(run_dir.path),
        "halt_reason": result.halt_reason.value,
        "halt_detail": result.halt_detail,
        "steps": summary["steps"],
        "t_final": summary["t_final"],
        "exit_code": int(code),
    }


class RunCommand(Command):
    """Integrate a constrained flow and write its run directory"""

    @property
    def name(self) -> str:
        return "run"

    @property
    def description(self) -> str:
        return "Run a flow scenario (or every *.json in a directory)"

    def plan(self, args: Namespace, context: CLIContext) -> List[Tuple[str, str]]:
        """(scenario file, output directory) per run; every scenario is validated up front"""
        source = Path(args.scenario).expanduser()
        if source.is_dir():
            files = sorted(source.glob("*.json"))
            if not files:
                raise ScenarioError(f"no scenario files in {source}")
            base = Path(args.out or context.default_output)
            jobs, seen = [], set()
            for file in files:
                scenario = load_scenario(file)
                if scenario.name in seen:
                    raise ScenarioError(f"duplicate scenario name '{scenario.name}' in {source}")
                seen.add(scenario.name)
                jobs.append((str(file), str(base / scenario.name)))
            return jobs

        scenario = load_scenario(source)
        out = args.out or scenario.output.directory or str(Path(context.default_output) / scenario.name)
        return [(str(source), out)]

    async def execute(self, args: Namespace, context: CLIContext) -> int:
        jobs = self.plan(args, context)
        echo = context.threads == 1
        for scenario_path, out in jobs:
            context.log(RunEventType.RUN_START, run_id=Path(out).name, command=self.name,
                        scenario=scenario_path, out=out)
        outcomes = await context.map(run_scenario_file, [(path, out, echo) for path, out in jobs])

        rows = []
        for outcome in outcomes:
            context.log(RunEventType.RUN_END, run_id=outcome["name"], command=self.name, **outcome)
            if outcome["exit_code"] != ExitCode.OK:
                context.log(RunEventType.HALT, run_id=outcome["name"], command=self.name,
                            reason=outcome["halt_reason"], detail=outcome["halt_detail"])
                OutputFormatter.warning(f"{outcome['name']}: {outcome['halt_reason']} ({outcome['halt_detail']})")
            rows.append((outcome["name"], outcome["halt_reason"], outcome["steps"],
                         format_number(outcome["t_final"]), outcome["out"]))
        OutputFormatter.print_table("Runs", ("scenario", "halt", "steps", "t", "output"), rows)
        return max(outcome["exit_code"] for outcome in outcomes)
