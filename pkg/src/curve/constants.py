"""
曲线模块常量定义
"""

MIN_SAMPLES = 16
DEGENERATE_SPEED = 1e-12

# 弧长重分布的 Newton 迭代
REDISTRIBUTE_MAX_NEWTON = 30
REDISTRIBUTE_TOLERANCE = 1e-14
