"""
运行事件数据类型定义
"""
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional


class RunEventType(str, Enum):
    """事件类型枚举"""
    # 运行生命周期
    RUN_START = "run_start"
    RUN_END = "run_end"
    HALT = "halt"

    # 检查与实验结果
    CHECK_RESULT = "check_result"
    EXPERIMENT = "experiment"

    # 命令与系统
    COMMAND = "command"
    SYSTEM_ERROR = "system_error"


@dataclass
class RunEvent:
    """
    运行事件

    - timestamp: ISO 8601 时间戳
    - event_number: 全局递增序号（由 RunLogger 分配）
    - event_type: 事件类型
    - run_id: 运行标识（场景名或输出目录名）
    - data: 事件数据
    """
    timestamp: str
    event_number: int
    event_type: str
    run_id: str
    data: Dict[str, Any] = field(default_factory=dict)
    command: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "timestamp": self.timestamp,
            "event_number": self.event_number,
            "event_type": self.event_type,
            "run_id": self.run_id,
        }
        if self.command:
            result["command"] = self.command
        result.update(self.data)
        return result

    @classmethod
    def create(
        cls,
        event_type: str,
        run_id: str,
        command: Optional[str] = None,
        **data
    ) -> "RunEvent":
        """工厂方法；序号在写入队列前分配"""
        return cls(
            timestamp=datetime.now().isoformat(),
            event_number=0,
            event_type=RunEventType(event_type).value,
            run_id=run_id,
            command=command,
            data=data,
        )
