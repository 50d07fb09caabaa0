"""Utility modules"""

from .output import OutputFormatter, OutputLevel
from .numbers import format_number, json_number, parse_number
from .stencils import periodic_d1, periodic_d2, periodic_d2_matrix

__all__ = [
    "OutputFormatter",
    "OutputLevel",
    "format_number",
    "json_number",
    "parse_number",
    "periodic_d1",
    "periodic_d2",
    "periodic_d2_matrix",
]
