"""Output formatting utilities for terminal display - Rich based"""

from typing import List, Optional, Sequence
from enum import Enum
from rich.console import Console
from rich.table import Table
from rich.panel import Panel


class OutputLevel(Enum):
    """输出级别"""
    QUIET = 0    # 只输出错误和最终结果
    NORMAL = 1   # 默认：关键信息（运行开始/结束、停止原因）
    VERBOSE = 2  # 详细信息（诊断行、检查细节）


class OutputFormatter:
    """使用 Rich 的统一输出格式化工具"""

    console = Console()
    error_console = Console(stderr=True)
    level: OutputLevel = OutputLevel.NORMAL

    @classmethod
    def set_level(cls, level: OutputLevel):
        """设置输出级别"""
        cls.level = level

    # ========== 基础输出 ==========

    @classmethod
    def success(cls, msg: str):
        """成功信息 - 绿色"""
        if cls.level.value >= OutputLevel.NORMAL.value:
            cls.console.print(f"✓ {msg}", style="green")

    @classmethod
    def error(cls, msg: str):
        """错误信息 - 红色，写到 stderr"""
        cls.error_console.print(f"❌ {msg}", style="red bold")

    @classmethod
    def info(cls, msg: str):
        """信息提示 - 蓝色"""
        if cls.level.value >= OutputLevel.NORMAL.value:
            cls.console.print(f"ℹ️  {msg}", style="cyan")

    @classmethod
    def warning(cls, msg: str):
        """警告信息 - 黄色"""
        if cls.level.value >= OutputLevel.NORMAL.value:
            cls.console.print(f"⚠️  {msg}", style="yellow")

    @classmethod
    def debug(cls, msg: str):
        """调试信息（verbose 模式）"""
        if cls.level.value >= OutputLevel.VERBOSE.value:
            cls.console.print(f"🐛 {msg}", style="dim")

    @classmethod
    def result(cls, msg: str):
        """最终结果，quiet 模式下也输出"""
        cls.console.print(msg)

    # ========== 表格与面板 ==========

    @classmethod
    def print_table(
        cls,
        title: str,
        columns: Sequence[str],
        rows: List[Sequence[str]],
        min_level: OutputLevel = OutputLevel.NORMAL,
    ):
        """打印表格"""
        if cls.level.value < min_level.value:
            return
        table = Table(title=title, show_header=True, header_style="bold cyan")
        for column in columns:
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(*[str(cell) for cell in row])
        cls.console.print(table)

    @classmethod
    def print_panel(cls, body: str, title: Optional[str] = None, ok: bool = True):
        """打印带边框的摘要面板"""
        if cls.level.value < OutputLevel.NORMAL.value:
            return
        cls.console.print(Panel(
            body,
            title=title,
            border_style="green" if ok else "red",
            expand=False,
        ))
