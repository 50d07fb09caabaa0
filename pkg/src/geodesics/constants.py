"""
测地线模块常量定义
"""

# 边值问题：终点偏差 < MISS_TOLERANCE · r_max
MISS_TOLERANCE = 1e-9
MAX_SHOOTING_ITERATIONS = 200

# Clairaut 求积：每段 Gauss-Legendre 节点数、段宽（ξ 变量）、最大段数
QUADRATURE_NODES = 10
PANEL_WIDTH = 1.5
MAX_PANELS = 48
MIN_CLAIRAUT_FRACTION = 1e-30

# 常微分方程积分容差
ODE_RTOL = 1e-12
ODE_ATOL = 1e-12

# 内切/外接半径搜索
RADII_GRID_SIZE = 16
RADII_EVALUATION_BUDGET = 200
RADII_COARSE_TARGETS = 64
RADII_XATOL = 1e-7
RADII_FATOL = 1e-10
