"""
日志系统模块

结构化运行事件日志：
- 非阻塞记录（队列 + 后台线程）
- 按日期分割的 JSON Lines 文件
- 与运行输出目录分离
"""
from typing import Optional

from .constants import DEFAULT_LOG_DIR
from .log_writer import LogWriter
from .run_logger import RunLogger
from .types import RunEvent, RunEventType

# 全局日志器实例
_logger_instance: Optional[RunLogger] = None


def init_logger(
    log_dir: str = DEFAULT_LOG_DIR,
    enabled: bool = True,
    force_reinit: bool = False,
    **kwargs
) -> RunLogger:
    """
    初始化全局日志器

    Args:
        log_dir: 日志目录
        enabled: 是否启用
        force_reinit: 强制重新初始化（测试用）
        **kwargs: 其他配置参数
    """
    global _logger_instance

    if _logger_instance is not None and not force_reinit:
        return _logger_instance
    if _logger_instance is not None:
        _logger_instance.shutdown()

    _logger_instance = RunLogger(log_dir=log_dir, enabled=enabled, **kwargs)
    return _logger_instance


def get_run_logger() -> RunLogger:
    """全局日志器；未初始化时返回一个禁用的实例"""
    global _logger_instance

    if _logger_instance is None:
        _logger_instance = RunLogger(log_dir=DEFAULT_LOG_DIR, enabled=False)
    return _logger_instance


def shutdown_logger() -> None:
    """关闭全局日志器"""
    global _logger_instance

    if _logger_instance is not None:
        _logger_instance.shutdown()
        _logger_instance = None


__all__ = [
    "DEFAULT_LOG_DIR",
    "LogWriter",
    "RunLogger",
    "RunEvent",
    "RunEventType",
    "init_logger",
    "get_run_logger",
    "shutdown_logger",
]
