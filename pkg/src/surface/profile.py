"""
旋转对称曲面的翘曲函数 φ

度量 g = dr² + φ(r)² du²。所有求值函数都是纯函数，接受标量或 numpy 数组。
"""
import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Callable, Dict, Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline, CubicSpline

from ..exceptions import DomainError
from .constants import SERIES_RADIUS

logger = logging.getLogger(__name__)


class SurfaceFamily(str, Enum):
    """曲面族标签"""
    CONSTANT_CURVATURE = "constant_curvature"
    TANH_PINCH = "tanh_pinch"
    RATIONAL_PINCH = "rational_pinch"
    TABULATED = "tabulated"


class SurfaceProfile(ABC):
    """Warp function φ of a rotationally symmetric pinched Hadamard surface.

    Immutable after construction. Concrete subclasses supply φ, φ', Φ, 𝒦, ψ
    and the inverse of φ; φ'' is always derived as −𝒦·φ so the identity
    𝒦 = −φ''/φ holds by construction.
    """

    def __init__(
        self,
        family: SurfaceFamily,
        a: float,
        b: float,
        r_max: float,
        grid_step: float,
        params: Optional[Dict[str, float]] = None,
    ):
        self._family = family
        self._a = float(a)
        self._b = float(b)
        self._r_max = float(r_max)
        self._grid_step = float(grid_step)
        self._params = dict(params or {})

    # ========== 基本属性 ==========

    @property
    def family(self) -> SurfaceFamily:
        return self._family

    @property
    def a(self) -> float:
        return self._a

    @property
    def b(self) -> float:
        return self._b

    @property
    def r_max(self) -> float:
        return self._r_max

    @property
    def grid_step(self) -> float:
        return self._grid_step

    @property
    def params(self) -> Dict[str, float]:
        return dict(self._params)

    @property
    def surface_id(self) -> str:
        """Stable identifier used in reports"""
        parts = [f"a={self._a!r}", f"b={self._b!r}"]
        parts.extend(f"{k}={v!r}" for k, v in sorted(self._params.items()))
        return f"{self._family.value}({','.join(parts)})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self._family.value,
            "a": self._a,
            "b": self._b,
            "r_max": self._r_max,
            "grid_step": self._grid_step,
            **self._params,
        }

    def grid(self) -> np.ndarray:
        """Nodes on (0, r_max] used for invariant verification and reports"""
        count = int(round(self._r_max / self._grid_step))
        return self._grid_step * np.arange(1, count + 1)

    # ========== 求值 ==========

    @abstractmethod
    def _phi(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _dphi(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _area_primitive(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _curvature(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _psi(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _inverse_phi(self, rho: np.ndarray) -> np.ndarray:
        pass

    @property
    @abstractmethod
    def taylor_coefficients(self) -> tuple:
        """(c3, c5) with φ(r) = r + c3 r³ + c5 r⁵ + O(r⁷)"""
        pass

    def _checked(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if not np.all(np.isfinite(r)):
            raise DomainError("non-finite radius")
        if np.any(r < 0.0) or np.any(r > self._r_max * (1.0 + 1e-12)):
            bad = r[(r < 0.0) | (r > self._r_max * (1.0 + 1e-12))]
            raise DomainError(
                f"radius {float(bad.flat[0])!r} outside [0, r_max={self._r_max!r}]"
            )
        return r

    def phi(self, r):
        return self._phi(self._checked(r))

    def dphi(self, r):
        return self._dphi(self._checked(r))

    def ddphi(self, r):
        r = self._checked(r)
        return -self._curvature(r) * self._phi(r)

    def area_primitive(self, r):
        """Φ(r) = ∫₀ʳ φ"""
        return self._area_primitive(self._checked(r))

    def gauss_curvature(self, r):
        return self._curvature(self._checked(r))

    def psi(self, r):
        """ψ = (φ')² − φφ''"""
        return self._psi(self._checked(r))

    def curvature_primitive(self, r):
        """K̂(r) = ∫₀ʳ 𝒦φ dρ = 1 − φ'(r)"""
        return 1.0 - self._dphi(self._checked(r))

    def inverse_phi(self, rho):
        rho = np.asarray(rho, dtype=float)
        if np.any(rho < 0.0):
            raise DomainError("φ⁻¹ requires a non-negative argument")
        return self._inverse_phi(rho)

    def chart_acceleration_terms(self, r):
        """Smooth factors of the geodesic equations in the chart (x, y) = r·(cos u, sin u).

        Returns g1 = (φφ' − r)/r³ and g2 = (φ − rφ')/(φ r²), both even in r and
        regular at the pole; a Taylor expansion is used for small r.
        """
        r = self._checked(r)
        c3, c5 = self.taylor_coefficients
        small = r < SERIES_RADIUS / max(self._b, 1.0)
        safe = np.where(small, min(1.0, self._r_max), r)
        phi = self._phi(safe)
        dphi = self._dphi(safe)
        g1 = np.where(small, 4.0 * c3 + (6.0 * c5 + 3.0 * c3 * c3) * r * r,
                      (phi * dphi - safe) / safe ** 3)
        g2 = np.where(small, (-2.0 * c3 - 4.0 * c5 * r * r) / (1.0 + c3 * r * r),
                      (phi - safe * dphi) / (phi * safe * safe))
        return g1, g2


class ConstantCurvatureProfile(SurfaceProfile):
    """Closed-form model space with 𝒦 ≡ −a²"""

    def __init__(self, a: float, r_max: float, grid_step: float):
        super().__init__(SurfaceFamily.CONSTANT_CURVATURE, a, a, r_max, grid_step)

    @property
    def taylor_coefficients(self) -> tuple:
        return self._a ** 2 / 6.0, self._a ** 4 / 120.0

    def _phi(self, r):
        return np.sinh(self._a * r) / self._a

    def _dphi(self, r):
        return np.cosh(self._a * r)

    def _area_primitive(self, r):
        # 2 sinh²(ar/2) 避免 cosh−1 的抵消
        return 2.0 * np.sinh(0.5 * self._a * r) ** 2 / self._a ** 2

    def _curvature(self, r):
        return np.full_like(r, -self._a ** 2, dtype=float)

    def _psi(self, r):
        return np.ones_like(r, dtype=float)

    def _inverse_phi(self, rho):
        return np.arcsinh(self._a * rho) / self._a


class TabulatedProfile(SurfaceProfile):
    """φ tabulated on a grid with cubic Hermite interpolation between nodes"""

    def __init__(
        self,
        family: SurfaceFamily,
        a: float,
        b: float,
        nodes: np.ndarray,
        phi: np.ndarray,
        dphi: np.ndarray,
        area: np.ndarray,
        psi: np.ndarray,
        dpsi: Optional[np.ndarray],
        curvature: Callable[[np.ndarray], np.ndarray],
        taylor: tuple,
        grid_step: float,
        params: Optional[Dict[str, float]] = None,
    ):
        super().__init__(family, a, b, float(nodes[-1]), grid_step, params)
        self._nodes = np.asarray(nodes, dtype=float)
        self._curvature_fn = curvature
        self._taylor = (float(taylor[0]), float(taylor[1]))

        curv = curvature(self._nodes)
        ddphi = -curv * phi
        self._phi_spline = CubicHermiteSpline(self._nodes, phi, dphi)
        self._dphi_spline = CubicHermiteSpline(self._nodes, dphi, ddphi)
        self._area_spline = CubicHermiteSpline(self._nodes, area, phi)
        self._inverse_spline = CubicHermiteSpline(phi, self._nodes, 1.0 / dphi)
        if dpsi is not None:
            self._psi_spline = CubicHermiteSpline(self._nodes, psi, dpsi)
        else:
            self._psi_spline = CubicSpline(self._nodes, psi)

        self._node_values = {
            "phi": np.asarray(phi, dtype=float),
            "dphi": np.asarray(dphi, dtype=float),
            "area": np.asarray(area, dtype=float),
            "psi": np.asarray(psi, dtype=float),
        }
        logger.debug(f"Tabulated profile {self.surface_id} with {len(nodes)} nodes")

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes

    def node_values(self, name: str) -> np.ndarray:
        """Raw tabulated values at the nodes (phi, dphi, area, psi)"""
        return self._node_values[name].copy()

    def grid(self) -> np.ndarray:
        return self._nodes[1:].copy()

    @property
    def taylor_coefficients(self) -> tuple:
        return self._taylor

    def _phi(self, r):
        return self._phi_spline(r)

    def _dphi(self, r):
        return self._dphi_spline(r)

    def _area_primitive(self, r):
        return self._area_spline(r)

    def _curvature(self, r):
        return np.asarray(self._curvature_fn(r), dtype=float)

    def _psi(self, r):
        return self._psi_spline(r)

    def _inverse_phi(self, rho):
        top = self._node_values["phi"][-1]
        if np.any(rho > top * (1.0 + 1e-12)):
            raise DomainError(f"φ⁻¹ argument beyond the tabulated range (max {top!r})")
        return self._inverse_spline(np.minimum(rho, top))
