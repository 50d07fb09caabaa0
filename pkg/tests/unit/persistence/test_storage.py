"""
Unit tests for run-directory storage

Tests CSV / JSON writers, the diagnostics time series, curve snapshots and
the errors raised for incomplete run directories.
"""

import json
import math

import numpy as np
import pytest

from src.curve import DiscreteCurve
from src.diagnostics import ALL_COLUMNS, DiagnosticsRecord, Snapshot
from src.exceptions import RunDirectoryError
from src.geodesics import POLE, ChartPoint
from src.persistence import RunDirectory, read_csv, read_table, write_csv, write_json
from tests.fixtures.curves import chart_ellipse


def make_record(step: int) -> DiagnosticsRecord:
    return DiagnosticsRecord(step=step, t=0.1 * step, L=7.0 - step * 1e-3, A=3.0, Delta=0.25,
                             h=1.3, kappa_min=1.2, kappa_max=1.4, sup_kappa_minus_h=0.1,
                             gb_residual=1e-12, r_min=0.9, r_max=1.1,
                             rho_minus=0.95 if step % 2 == 0 else None, dt_used=1e-3)


@pytest.mark.unit
class TestCsv:
    """Tests for write_csv / read_csv / read_table"""

    def test_exact_decimal_text(self, tmp_path):
        """Test floats are written with round-trip precision"""
        path = write_csv(tmp_path / "t.csv", ("a", "b"), [(0.1, 1 / 3), (7, None)])
        lines = path.read_text().splitlines()
        assert lines == ["a,b", f"0.1,{1 / 3!r}", "7,"]
        header, rows = read_csv(path)
        assert header == ["a", "b"]
        assert rows[0]["b"] == 1 / 3
        assert rows[1]["b"] is None

    def test_nan_is_empty(self, tmp_path):
        """Test NaN cells are written empty"""
        path = write_csv(tmp_path / "nan.csv", ("x", "y"), [(math.nan, 1.0)])
        assert path.read_text() == "x,y\n,1.0\n"
        assert read_csv(path)[1] == [{"x": None, "y": 1.0}]

    def test_ragged_rows(self, tmp_path):
        """Test rows with the wrong cell count are rejected"""
        path = tmp_path / "ragged.csv"
        path.write_text("a,b\n1,2\n3\n")
        with pytest.raises(RunDirectoryError, match=":3:"):
            read_csv(path)

    def test_non_numeric_cell(self, tmp_path):
        """Test text cells are rejected"""
        path = tmp_path / "text.csv"
        path.write_text("a\nhello\n")
        with pytest.raises(RunDirectoryError):
            read_csv(path)

    def test_empty_file(self, tmp_path):
        """Test a file without header"""
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(RunDirectoryError, match="empty"):
            read_csv(path)

    def test_read_table(self, tmp_path):
        """Test required columns and empty cells"""
        path = write_csv(tmp_path / "tab.csv", ("r", "phi"), [(0.0, 0.0), (0.5, None)])
        with pytest.raises(RunDirectoryError, match="lacks columns"):
            read_table(path, ("r", "dphi"))
        with pytest.raises(RunDirectoryError, match="empty cells"):
            read_table(path, ("r", "phi"))
        table = read_table(path, ("r",))
        np.testing.assert_array_equal(table["r"], [0.0, 0.5])


@pytest.mark.unit
class TestJson:
    """Tests for write_json"""

    def test_non_finite_and_numpy(self, tmp_path):
        """Test NaN/inf become null and numpy scalars serialize"""
        path = write_json(tmp_path / "x.json", {
            "nan": math.nan, "inf": [math.inf, 1.5], "int": np.int64(3),
            "float": np.float64(2.5), "array": np.array([1.0, np.nan]),
        })
        data = json.loads(path.read_text())
        assert data == {"nan": None, "inf": [None, 1.5], "int": 3, "float": 2.5, "array": [1.0, None]}

    def test_deterministic(self, tmp_path):
        """Test identical input gives identical bytes"""
        payload = {"b": 1.0 / 3.0, "a": [0.1, 0.2]}
        first = write_json(tmp_path / "1.json", payload).read_bytes()
        second = write_json(tmp_path / "2.json", payload).read_bytes()
        assert first == second


@pytest.mark.unit
class TestRunDirectory:
    """Tests for RunDirectory"""

    def test_require(self, tmp_path):
        """Test missing directories and files are reported"""
        with pytest.raises(RunDirectoryError, match="does not exist"):
            RunDirectory(tmp_path / "absent").require(RunDirectory.SUMMARY)
        run_dir = RunDirectory(tmp_path / "run").create()
        run_dir.write_json(RunDirectory.SUMMARY, {"halt_reason": "completed"})
        with pytest.raises(RunDirectoryError, match="timeseries.csv"):
            run_dir.require(RunDirectory.SUMMARY, RunDirectory.TIMESERIES)
        run_dir.require(RunDirectory.SUMMARY)

    def test_timeseries_round_trip(self, tmp_path):
        """Test records survive write/read with optional columns"""
        run_dir = RunDirectory(tmp_path).create()
        records = [make_record(k) for k in range(3)]
        run_dir.write_timeseries(records)
        header = run_dir.file(RunDirectory.TIMESERIES).read_text().splitlines()[0]
        assert header == ",".join(ALL_COLUMNS)
        loaded = run_dir.read_timeseries()
        assert [r.step for r in loaded] == [0, 1, 2]
        assert loaded[1].L == records[1].L
        assert loaded[0].rho_minus == 0.95
        assert loaded[1].rho_minus is None

    def test_timeseries_missing_columns(self, tmp_path):
        """Test a time series without the core columns"""
        run_dir = RunDirectory(tmp_path).create()
        write_csv(run_dir.file(RunDirectory.TIMESERIES), ("step", "t"), [(0, 0.0)])
        with pytest.raises(RunDirectoryError, match="lacks columns"):
            run_dir.read_timeseries()

    def test_snapshot_round_trip(self, tmp_path, tanh_surface):
        """Test snapshot files rebuild the same curve and metadata"""
        run_dir = RunDirectory(tmp_path).create()
        curve = chart_ellipse(tanh_surface, n=64)
        snapshot = Snapshot(step=40, t=0.04, curve=curve, center_minus=ChartPoint(0.3, 0.2),
                            center_plus=POLE, rho_minus=0.7, rho_plus=1.3, radii_accuracy=1e-6)
        path = run_dir.write_snapshot(snapshot)
        assert path.parent.name == RunDirectory.SNAPSHOTS
        restored = run_dir.read_snapshots([snapshot.to_dict()], tanh_surface)[0]
        np.testing.assert_array_equal(restored.curve.r, curve.r)
        np.testing.assert_allclose(restored.curve.kappa, curve.kappa, rtol=1e-12, atol=1e-12)
        assert restored.center_minus == ChartPoint(0.3, 0.2)
        assert restored.center_plus is POLE
        assert restored.rho_plus == 1.3

    def test_snapshot_angles_reduced(self, tmp_path, constant_surface):
        """Test the u column is reduced to [0, 2π) and the curve survives the reduction"""
        run_dir = RunDirectory(tmp_path).create()
        u = 5.0 + 2.0 * math.pi / 64 * np.arange(64)
        curve = DiscreteCurve(constant_surface, 1.0 + 0.1 * np.cos(2.0 * u), u)
        assert curve.u_lifted.max() > 2.0 * math.pi
        path = run_dir.write_snapshot(Snapshot(step=0, t=0.0, curve=curve))
        table = read_table(path, ("j", "u"))
        assert np.all((table["u"] >= 0.0) & (table["u"] < 2.0 * math.pi))
        restored = run_dir.read_curve(path.name, constant_surface)
        assert restored.winding == 1
        assert restored.length == pytest.approx(curve.length, rel=1e-12)
        assert restored.area == pytest.approx(curve.area, rel=1e-12)

    def test_missing_snapshot(self, tmp_path, constant_surface):
        """Test a summary entry without its file"""
        run_dir = RunDirectory(tmp_path).create()
        with pytest.raises(RunDirectoryError, match="missing"):
            run_dir.read_curve("snapshot_000001.csv", constant_surface)

    def test_invalid_json(self, tmp_path):
        """Test corrupt JSON files are run-directory errors"""
        run_dir = RunDirectory(tmp_path).create()
        run_dir.write_text(RunDirectory.SUMMARY, "{")
        with pytest.raises(RunDirectoryError, match="not valid JSON"):
            run_dir.read_json(RunDirectory.SUMMARY)
