"""Constrained curvature flows on rotationally symmetric pinched Hadamard surfaces"""

__version__ = "0.1.0"
