"""surface-info 子命令：打印并导出翘曲函数、曲率与 ψ"""

import logging
from argparse import Namespace
from pathlib import Path

import numpy as np

from ..config.loader import build_surface, load_scenario
from ..diagnostics import check_geodesic_circle_bounds
from ..diagnostics.types import CheckStatus
from ..exceptions import ScenarioError
from ..logging import RunEventType
from ..persistence import RunDirectory, Series, line_plot, write_csv
from ..surface import SurfaceFamily, SurfaceProfile, verify_invariants
from ..utils.output import OutputFormatter
from ..utils.numbers import format_number
from .base import CLIContext, Command, ExitCode

logger = logging.getLogger(__name__)

SURFACE_COLUMNS = ("r", "phi", "dphi", "ddphi", "K", "psi", "kappa_circle")
SVG_POINTS = 1000


def surface_table(surface: SurfaceProfile, r: np.ndarray) -> np.ndarray:
    """Columns of SURFACE_COLUMNS evaluated at r (r > 0)"""
    phi = surface.phi(r)
    dphi = surface.dphi(r)
    return np.column_stack([r, phi, dphi, surface.ddphi(r), surface.gauss_curvature(r), surface.psi(r), dphi / phi])


def _thin(grid: np.ndarray, count: int) -> np.ndarray:
    if grid.size <= count:
        return grid
    return grid[np.unique(np.linspace(0, grid.size - 1, count).round().astype(int))]


class SurfaceInfoCommand(Command):
    """Tabulate a scenario surface and check its invariants"""

    @property
    def name(self) -> str:
        return "surface-info"

    @property
    def description(self) -> str:
        return "Print φ, 𝒦 and ψ of a surface with its invariant checks"

    @property
    def aliases(self):
        return ["surface"]

    async def execute(self, args: Namespace, context: CLIContext) -> int:
        path = Path(args.scenario).expanduser()
        scenario = load_scenario(path)
        surface = build_surface(scenario.surface, path.parent)
        if args.rows < 2:
            raise ScenarioError(f"--rows must be at least 2, got {args.rows}")

        grid = surface.grid()
        table = surface_table(surface, grid)
        shown = table[np.unique(np.linspace(0, grid.size - 1, args.rows).round().astype(int))]
        OutputFormatter.print_table(
            f"{surface.surface_id} (a={surface.a!r}, b={surface.b!r}, r_max={surface.r_max!r})",
            ("r", "φ", "𝒦", "ψ", "φ'/φ"),
            [tuple(format_number(float(row[k])) for k in (0, 1, 4, 5, 6)) for row in shown],
        )

        psi_monotone = surface.family != SurfaceFamily.TABULATED and surface.b > surface.a
        invariants = verify_invariants(surface, psi_monotone=psi_monotone)
        circle = check_geodesic_circle_bounds(surface)
        rows = [(c.name, "pass" if c.passed else "FAIL", format_number(c.worst_value), format_number(c.worst_r))
                for c in invariants]
        rows.append((circle.name, circle.status.value, format_number(circle.worst_violation), ""))
        OutputFormatter.print_table("Invariants", ("invariant", "status", "worst", "at r"), rows)

        out = args.out or scenario.output.directory or str(Path(context.default_output) / scenario.name)
        run_dir = RunDirectory(out).create()
        write_csv(run_dir.file(RunDirectory.SURFACE_CSV), SURFACE_COLUMNS, table.tolist())
        if scenario.output.svg:
            thin = surface_table(surface, _thin(grid, SVG_POINTS))
            svg = line_plot(
                [Series("K(r)", thin[:, 0], thin[:, 4]), Series("psi(r)", thin[:, 0], thin[:, 5])],
                f"{surface.surface_id}: curvature and psi", "r", "value", scenario.output.svg_size,
            )
            run_dir.write_text(RunDirectory.SURFACE_SVG, svg)

        ok = all(c.passed for c in invariants) and circle.status != CheckStatus.FAILURE
        context.log(RunEventType.CHECK_RESULT, run_id=scenario.name, command=self.name,
                    surface=surface.surface_id, invariants=[c.to_dict() for c in invariants],
                    circle=circle.to_dict())
        OutputFormatter.print_panel(
            f"{sum(c.passed for c in invariants)}/{len(invariants)} invariants hold; output in {run_dir.path}",
            title=surface.surface_id, ok=ok,
        )
        return ExitCode.OK if ok else ExitCode.VERIFICATION_FAILED
