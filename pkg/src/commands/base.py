"""Command system for CLI"""

import asyncio
import logging
from abc import ABC, abstractmethod
from argparse import Namespace
from concurrent.futures import ProcessPoolExecutor
from enum import IntEnum
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..exceptions import HadamardFlowError, ScenarioError
from ..logging import RunEventType, RunLogger, get_run_logger

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """进程退出码"""
    OK = 0
    USAGE = 1
    SINGULAR_HALT = 2
    VERIFICATION_FAILED = 3


class Command(ABC):
    """命令基类"""

    @property
    @abstractmethod
    def name(self) -> str:
        """子命令名"""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """命令描述"""
        pass

    @property
    def aliases(self) -> List[str]:
        """命令别名"""
        return []

    @abstractmethod
    async def execute(self, args: Namespace, context: "CLIContext") -> int:
        """
        执行命令

        Args:
            args: 解析后的命令行参数
            context: CLI 上下文

        Returns:
            进程退出码
        """
        pass


class CLIContext:
    """CLI 上下文，Commands 可以访问的资源"""

    def __init__(self, settings: Dict, run_logger: Optional[RunLogger] = None):
        self.settings = settings
        self.run_logger = run_logger or get_run_logger()

    @property
    def threads(self) -> int:
        return max(1, int(self.settings.get("threads", 1)))

    @property
    def default_output(self) -> str:
        return self.settings.get("output", {}).get("default_directory", "runs")

    def log(self, event_type: RunEventType, run_id: str = "-", command: Optional[str] = None, **data) -> None:
        self.run_logger.log(event_type, run_id, command=command, **data)

    async def map(self, fn: Callable[..., Any], items: Sequence[tuple]) -> List[Any]:
        """fn(*item) for every item, in order.

        Sequential with one worker; otherwise one process per item up to
        HF_THREADS. fn must be a picklable module-level function.
        """
        if self.threads == 1 or len(items) <= 1:
            return [fn(*item) for item in items]
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=min(self.threads, len(items))) as pool:
            futures = [loop.run_in_executor(pool, fn, *item) for item in items]
            return list(await asyncio.gather(*futures))


class CommandRegistry:
    """命令注册表"""

    def __init__(self):
        self.commands: Dict[str, Command] = {}
        self.aliases: Dict[str, str] = {}  # alias -> command_name

    def register(self, command: Command):
        """注册命令"""
        self.commands[command.name] = command

        # 注册别名
        for alias in command.aliases:
            self.aliases[alias] = command.name

    def get(self, name: str) -> Optional[Command]:
        """根据名称或别名获取命令"""
        if name in self.commands:
            return self.commands[name]
        if name in self.aliases:
            return self.commands[self.aliases[name]]
        return None

    def get_all(self) -> List[Command]:
        """获取所有命令"""
        return list(self.commands.values())

    async def execute(self, name: str, args: Namespace, context: CLIContext) -> int:
        """执行命令；数值层异常记录后继续上抛，由 CLI 映射为退出码"""
        command = self.get(name)
        if not command:
            raise ScenarioError(f"Unknown command: {name}")

        context.log(RunEventType.COMMAND, command=command.name, args=_loggable(args))
        try:
            return int(await command.execute(args, context))
        except HadamardFlowError as e:
            context.log(RunEventType.SYSTEM_ERROR, command=command.name,
                        error_type=type(e).__name__, message=str(e))
            raise


def _loggable(args: Namespace) -> Dict[str, Any]:
    return {k: v if isinstance(v, (str, int, float, bool, list, type(None))) else str(v)
            for k, v in sorted(vars(args).items())}


# 全局注册表
command_registry = CommandRegistry()
