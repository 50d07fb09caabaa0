"""
配置模块

场景文件模型、进程级设置加载与命令行参数解析。
"""
from .schema import SPEC_VERSION, Scenario
from .loader import (
    DEFAULT_SETTINGS_PATH,
    build_initial,
    build_surface,
    load_scenario,
    load_settings,
    parse_scenario,
)
from .args import SUBCOMMANDS, build_parser, parse_args, parse_modes

__all__ = [
    "SPEC_VERSION",
    "Scenario",
    "DEFAULT_SETTINGS_PATH",
    "build_initial",
    "build_surface",
    "load_scenario",
    "load_settings",
    "parse_scenario",
    "SUBCOMMANDS",
    "build_parser",
    "parse_args",
    "parse_modes",
]
