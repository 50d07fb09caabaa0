"""
周期网格上的四阶中心差分
"""
import numpy as np
from scipy import sparse

FIRST_DERIVATIVE = (1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0)
SECOND_DERIVATIVE = (-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0)


def _apply(values: np.ndarray, weights, scale: float) -> np.ndarray:
    result = np.zeros_like(values, dtype=float)
    for offset, weight in zip(range(-2, 3), weights):
        if weight:
            result += weight * np.roll(values, -offset)
    return result / scale


def periodic_d1(values: np.ndarray, step: float) -> np.ndarray:
    """f' on a periodic grid, error O(step⁴)"""
    return _apply(np.asarray(values, dtype=float), FIRST_DERIVATIVE, step)


def periodic_d2(values: np.ndarray, step: float) -> np.ndarray:
    """f'' on a periodic grid, error O(step⁴)"""
    return _apply(np.asarray(values, dtype=float), SECOND_DERIVATIVE, step * step)


def periodic_d2_matrix(count: int, step: float) -> sparse.csc_matrix:
    """Sparse matrix of periodic_d2 (pentadiagonal with corner wrap-around)."""
    if count < 5:
        raise ValueError("periodic stencil needs at least 5 points")
    diagonals, offsets = [], []
    for offset, weight in zip(range(-2, 3), SECOND_DERIVATIVE):
        diagonals.append(np.full(count - abs(offset), weight))
        offsets.append(offset)
        if offset:
            # 周期延拓的角元素
            wrap = offset - count if offset > 0 else offset + count
            diagonals.append(np.full(abs(offset), weight))
            offsets.append(wrap)
    matrix = sparse.diags(diagonals, offsets, shape=(count, count), format="csc")
    return matrix / (step * step)
