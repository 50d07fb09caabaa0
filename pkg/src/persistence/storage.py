# src/persistence/storage.py
"""
运行目录读写：CSV 时间序列、曲线快照、JSON 摘要

数值一律以往返精确的十进制写出，相同输入产生逐字节相同的文件。
"""
import csv
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..curve import DiscreteCurve
from ..diagnostics.types import ALL_COLUMNS, SNAPSHOT_COLUMNS, DiagnosticsRecord, Snapshot
from ..exceptions import RunDirectoryError
from ..surface import SurfaceProfile
from ..utils.numbers import format_number, json_number, parse_number

logger = logging.getLogger(__name__)


def json_serializer(obj):
    """JSON serializer for objects not serializable by default json code"""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return json_number(float(obj))
    if isinstance(obj, np.ndarray):
        return [json_serializer(v) for v in obj.tolist()]
    raise TypeError(
        f"Object of type {obj.__class__.__name__} is not JSON serializable")


def _finite(obj):
    """NaN/inf → null, recursively"""
    if isinstance(obj, float):
        return json_number(obj)
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


# ========== 通用读写 ==========

def write_json(path: Path, data: Dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(_finite(data), f, ensure_ascii=False, indent=2,
                  default=json_serializer, allow_nan=False)
        f.write('\n')
    return path


def read_json(path: Path) -> Dict[str, Any]:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(v) for v in row])
    return path


def read_csv(path: Path) -> Tuple[List[str], List[Dict[str, Optional[float]]]]:
    """Header and rows; empty cells become None"""
    with open(path, 'r', encoding='utf-8', newline='') as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise RunDirectoryError(f"{path} is empty")
        rows = []
        for number, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise RunDirectoryError(f"{path}:{number}: expected {len(header)} cells, got {len(row)}")
            try:
                rows.append({name: parse_number(cell) for name, cell in zip(header, row)})
            except ValueError as e:
                raise RunDirectoryError(f"{path}:{number}: {e}") from e
    return header, rows


def read_table(path: Path, columns: Sequence[str]) -> Dict[str, np.ndarray]:
    """Numeric columns of a CSV table, every cell required"""
    header, rows = read_csv(path)
    missing = [c for c in columns if c not in header]
    if missing:
        raise RunDirectoryError(f"{path} lacks columns {missing}")
    table = {}
    for name in columns:
        values = [row[name] for row in rows]
        if any(v is None for v in values):
            raise RunDirectoryError(f"{path}: column '{name}' has empty cells")
        table[name] = np.array(values, dtype=float)
    return table


# ========== 运行目录 ==========

class RunDirectory:
    """Files of one run (or spectrum / surface-info) output directory"""

    SCENARIO = "scenario.json"
    TIMESERIES = "timeseries.csv"
    SUMMARY = "summary.json"
    SNAPSHOTS = "snapshots"
    CURVES_SVG = "curves.svg"
    VERIFICATION = "verification.json"
    SPECTRUM = "spectrum.json"
    SPECTRUM_SVG = "spectrum.svg"
    SURFACE_CSV = "surface.csv"
    SURFACE_SVG = "surface.svg"

    def __init__(self, path):
        self.path = Path(path).expanduser()

    def create(self) -> "RunDirectory":
        self.path.mkdir(parents=True, exist_ok=True)
        return self

    def file(self, name: str) -> Path:
        return self.path / name

    def require(self, *names: str) -> None:
        if not self.path.is_dir():
            raise RunDirectoryError(f"run directory {self.path} does not exist")
        missing = [n for n in names if not self.file(n).exists()]
        if missing:
            raise RunDirectoryError(f"run directory {self.path} is missing {', '.join(missing)}")

    # ========== 时间序列 ==========

    def write_timeseries(self, records: Sequence[DiagnosticsRecord]) -> Path:
        rows = ([row[c] for c in ALL_COLUMNS] for row in (r.to_row() for r in records))
        return write_csv(self.file(self.TIMESERIES), ALL_COLUMNS, rows)

    def read_timeseries(self) -> List[DiagnosticsRecord]:
        header, rows = read_csv(self.file(self.TIMESERIES))
        required = [c for c in ("step", "t", "L", "A", "Delta") if c not in header]
        if required:
            raise RunDirectoryError(f"{self.TIMESERIES} lacks columns {required}")
        try:
            return [DiagnosticsRecord.from_row(row) for row in rows]
        except (TypeError, ValueError) as e:
            raise RunDirectoryError(f"{self.TIMESERIES}: {e}") from e

    # ========== 快照 ==========

    def write_snapshot(self, snapshot: Snapshot) -> Path:
        curve = snapshot.curve
        rows = zip(range(curve.n), curve.u, curve.r, curve.kappa, curve.ds)
        return write_csv(self.file(self.SNAPSHOTS) / snapshot.filename, SNAPSHOT_COLUMNS, rows)

    def read_curve(self, filename: str, surface: SurfaceProfile) -> DiscreteCurve:
        path = self.file(self.SNAPSHOTS) / filename
        if not path.exists():
            raise RunDirectoryError(f"snapshot {path} is missing")
        table = read_table(path, ("j", "u", "r"))
        order = np.argsort(table["j"])
        return DiscreteCurve(surface, table["r"][order], table["u"][order])

    def read_snapshots(self, entries: Sequence[Dict[str, Any]], surface: SurfaceProfile) -> List[Snapshot]:
        """Snapshots listed in summary.json, with their stored centers and radii"""
        return [Snapshot.from_dict(entry, self.read_curve(entry["file"], surface)) for entry in entries]

    # ========== JSON ==========

    def write_json(self, name: str, data: Dict[str, Any]) -> Path:
        return write_json(self.file(name), data)

    def read_json(self, name: str) -> Dict[str, Any]:
        try:
            return read_json(self.file(name))
        except json.JSONDecodeError as e:
            raise RunDirectoryError(f"{self.file(name)} is not valid JSON: {e}") from e

    def write_text(self, name: str, text: str) -> Path:
        path = self.file(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        return path
