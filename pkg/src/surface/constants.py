"""
曲面模块常量定义

所有容差集中在这里，README 的常量表与此保持一致。
"""

# 默认网格与有效半径
DEFAULT_GRID_STEP = 1e-3
DEFAULT_R_MAX_FACTOR = 20.0  # r_max = 20 / a

# 不变量检查容差（按自然量级缩放：曲率用 b²，ψ 用 1）
CURVATURE_TOLERANCE = 1e-8
PSI_TOLERANCE = 1e-8
CIRCLE_CURVATURE_TOLERANCE = 1e-8
PSI_IDENTITY_TOLERANCE = 1e-8

# 小 r 时使用 Taylor 展开的阈值（相对 1/b）
SERIES_RADIUS = 1e-3

# surface-info 表格行数
INFO_TABLE_ROWS = 11
