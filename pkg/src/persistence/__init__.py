"""
持久化模块

运行目录中的 CSV 时间序列、曲线快照、JSON 摘要与 SVG 图。
"""
from .storage import RunDirectory, read_csv, read_json, read_table, write_csv, write_json
from .svg import CHART_CAPTION, Series, curves_plot, line_plot

__all__ = [
    "RunDirectory",
    "read_csv",
    "read_json",
    "read_table",
    "write_csv",
    "write_json",
    "CHART_CAPTION",
    "Series",
    "curves_plot",
    "line_plot",
]
