"""Geodesic-circle curvature and constant-curvature model disks"""

import math
from typing import Tuple

import numpy as np

from ..exceptions import DomainError, ParameterError
from .profile import SurfaceProfile


def geodesic_circle_curvature(surface: SurfaceProfile, r):
    """κ° = φ'(r)/φ(r) for the circle of radius r about the pole."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0) or np.any(r > surface.r_max * (1.0 + 1e-12)):
        raise DomainError(f"geodesic circle radius must lie in (0, r_max={surface.r_max!r}]")
    value = surface.dphi(r) / surface.phi(r)
    return float(value) if value.ndim == 0 else value


def model_disk(a: float, rho: float) -> Tuple[float, float]:
    """Length and area of the geodesic disk of radius ρ in curvature −a².

    L = 2π sinh(aρ)/a, A = 2π(cosh(aρ) − 1)/a².
    """
    if not a > 0:
        raise ParameterError(f"a must be positive, got {a!r}")
    if not rho > 0:
        raise ParameterError(f"rho must be positive, got {rho!r}")
    length = 2.0 * math.pi * math.sinh(a * rho) / a
    area = 4.0 * math.pi * math.sinh(0.5 * a * rho) ** 2 / (a * a)
    return length, area


def isoperimetric_deficit(length: float, area: float, a: float) -> float:
    """Δ = L² − 4πA − a²A²"""
    return length * length - 4.0 * math.pi * area - a * a * area * area


def predicted_rate(surface: SurfaceProfile, radius: float, mode: int) -> float:
    """Linearized decay rate λ_i = (−i² + ψ(𝔯))/φ(𝔯)² of mode i about the circle 𝔯."""
    phi = float(surface.phi(radius))
    return (-float(mode) ** 2 + float(surface.psi(radius))) / (phi * phi)
