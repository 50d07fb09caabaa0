"""
日志文件写入器

JSON Lines 格式，按日期分文件，批量写入。
"""
import json
import logging
from datetime import date, datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from .constants import LOG_FILE_DATE_FORMAT, LOG_FILE_EXTENSION

logger = logging.getLogger(__name__)


def _default(obj):
    if hasattr(obj, "value"):
        return obj.value
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return str(obj)


class LogWriter:
    """Appends event batches to <log_dir>/<YYYY-MM-DD>.jsonl"""

    def __init__(self, log_dir: Path):
        self.log_dir = Path(log_dir).expanduser()
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self._current_date: Optional[date] = None
        self._file_handle: Optional[TextIO] = None

    @property
    def current_file(self) -> Path:
        return self._path_for(self._current_date or datetime.now().date())

    def write_batch(self, records: List[Dict[str, Any]]) -> None:
        if not records:
            return
        self._rotate_if_needed()
        for record in records:
            self._file_handle.write(json.dumps(record, ensure_ascii=False, default=_default) + "\n")
        self._file_handle.flush()
        logger.debug(f"wrote {len(records)} run events")

    def close(self) -> None:
        if self._file_handle:
            try:
                self._file_handle.close()
            except OSError as e:
                logger.error(f"failed to close log file: {e}")
            self._file_handle = None

    def _rotate_if_needed(self) -> None:
        """新的一天换新文件；追加模式以便重启后续写"""
        today = datetime.now().date()
        if self._current_date == today and self._file_handle:
            return
        if self._file_handle:
            self._file_handle.close()
        self._current_date = today
        self._file_handle = open(self._path_for(today), "a", encoding="utf-8")

    def _path_for(self, target_date: date) -> Path:
        return self.log_dir / (target_date.strftime(LOG_FILE_DATE_FORMAT) + LOG_FILE_EXTENSION)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
