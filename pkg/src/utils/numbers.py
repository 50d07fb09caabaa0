"""Round-trip number formatting for CSV/JSON outputs"""

import math
from numbers import Integral
from typing import Optional


def format_number(value: Optional[float]) -> str:
    """Shortest decimal string that parses back to the same float.

    None and NaN become the empty string (optional CSV columns).
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, Integral):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return ""
    return repr(value)


def parse_number(text: str) -> Optional[float]:
    """Inverse of format_number."""
    text = text.strip()
    if not text:
        return None
    return float(text)


def json_number(value: Optional[float]) -> Optional[float]:
    """Map non-finite floats to None so the JSON stays standard."""
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return None
    return value
