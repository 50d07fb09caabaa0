"""
运行事件日志器

队列 + 后台线程批量写入 JSONL；记录调用不阻塞数值计算。
日志只写到日志目录，不进入运行输出目录。
"""
import logging
import queue
import sys
import threading
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from .constants import DEFAULT_BATCH_SIZE, DEFAULT_BATCH_TIMEOUT, DEFAULT_QUEUE_SIZE
from .log_writer import LogWriter
from .types import RunEvent, RunEventType

logger = logging.getLogger(__name__)


class RunLogger:
    """Structured run-event log"""

    def __init__(
        self,
        log_dir: Path,
        queue_size: int = DEFAULT_QUEUE_SIZE,
        batch_size: int = DEFAULT_BATCH_SIZE,
        batch_timeout: float = DEFAULT_BATCH_TIMEOUT,
        enabled: bool = True,
    ):
        self.enabled = enabled
        if not self.enabled:
            logger.info("RunLogger disabled by configuration")
            return

        self.log_dir = Path(log_dir).expanduser()
        self.queue_size = queue_size
        self.batch_size = batch_size
        self.batch_timeout = batch_timeout

        self._queue: queue.Queue = queue.Queue(maxsize=queue_size)
        self._writer = LogWriter(self.log_dir)
        self._write_lock = threading.Lock()
        self._counter = 0
        self._counter_lock = threading.Lock()
        self._running = True
        self._worker_thread = threading.Thread(target=self._worker, name="RunLogger-Worker", daemon=True)
        self._worker_thread.start()

    def log(self, event_type: RunEventType, run_id: str = "-", command: Optional[str] = None, **data) -> None:
        """Queue one event; drops it with a warning when the queue is full"""
        if not self.enabled:
            return
        event = RunEvent.create(event_type, run_id, command=command, **data)
        with self._counter_lock:
            self._counter += 1
            event.event_number = self._counter
        try:
            self._queue.put_nowait(event.to_dict())
        except queue.Full:
            logger.warning(f"run-event queue full (size={self.queue_size}), dropping {event.event_type}")

    @property
    def events_logged(self) -> int:
        return self._counter if self.enabled else 0

    def flush(self) -> None:
        """Write everything still queued"""
        if not self.enabled:
            return
        batch = []
        while True:
            try:
                batch.append(self._queue.get_nowait())
            except queue.Empty:
                break
        self._write(batch)

    def shutdown(self) -> None:
        if not self.enabled:
            return
        self._running = False
        if self._worker_thread.is_alive():
            self._worker_thread.join(timeout=5)
        self.flush()
        self._writer.close()

    # ========== 后台线程 ==========

    def _worker(self) -> None:
        while self._running:
            self._write(self._collect_batch())

    def _collect_batch(self) -> List[Dict[str, Any]]:
        batch = []
        deadline = time.monotonic() + self.batch_timeout
        while len(batch) < self.batch_size:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                break
            try:
                batch.append(self._queue.get(timeout=remaining))
            except queue.Empty:
                break
        return batch

    def _write(self, batch: List[Dict[str, Any]]) -> None:
        if not batch:
            return
        with self._write_lock:
            try:
                self._writer.write_batch(batch)
            except OSError as e:
                logger.error(f"failed to write run events: {e}")
                for record in batch:
                    sys.stderr.write(f"[LOG FALLBACK] {record}\n")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.shutdown()
