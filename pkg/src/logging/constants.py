"""
日志系统常量定义
"""

# 默认配置
DEFAULT_LOG_DIR = "~/.hadamard-flow/logs"
DEFAULT_QUEUE_SIZE = 1000
DEFAULT_BATCH_SIZE = 100
DEFAULT_BATCH_TIMEOUT = 0.5  # 秒

# 文件命名
LOG_FILE_DATE_FORMAT = "%Y-%m-%d"
LOG_FILE_EXTENSION = ".jsonl"
