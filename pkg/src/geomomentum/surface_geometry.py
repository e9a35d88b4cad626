"""Differential geometry of surfaces embedded in flat R^3.

Sign convention: the Weingarten matrix is ``alpha = -b g^{-1}`` with
``b_{mu nu} = r_{mu nu} . n``, so that row mu of alpha gives
``d_mu n = alpha_mu^nu r_nu``. Then ``M = -Tr(alpha)/2`` and
``K = det(alpha)``; a sphere of radius r with outward normal has
``M = -1/r`` and ``K = 1/r^2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from geomomentum import settings
from geomomentum.exceptions import DegenerateChart, ShellFold
from geomomentum.surfaces.base import SurfaceChart

logger = logging.getLogger(__name__)

DET_G_TOLERANCE = 1e-12

# Step (fraction of the coordinate span) for the fourth-order central
# differences of the normal field and of scalar functions.
NORMAL_STEP = 1e-3


@dataclass(frozen=True)
class SurfaceGeometry:
    """Pointwise geometry: metric, unit normal, Weingarten matrix, curvatures."""

    g: np.ndarray
    n: np.ndarray
    alpha: np.ndarray
    M: float
    K: float
    tangents: tuple[np.ndarray, np.ndarray]

    @property
    def det_g(self) -> float:
        return float(np.linalg.det(self.g))

    @property
    def dual_tangents(self) -> tuple[np.ndarray, np.ndarray]:
        """r^mu = g^{mu nu} r_nu."""
        g_inv = np.linalg.inv(self.g)
        r1, r2 = self.tangents
        return g_inv[0, 0] * r1 + g_inv[0, 1] * r2, g_inv[1, 0] * r1 + g_inv[1, 1] * r2


@dataclass(frozen=True)
class ShellMetric:
    G: np.ndarray
    detG: float


def _check_chart_point(chart: SurfaceChart, q) -> tuple[float, float]:
    q1, q2 = float(q[0]), float(q[1])
    if not chart.contains(q1, q2):
        raise DegenerateChart(
            f"{chart.describe()}: point {q1!r}, {q2!r} is outside the chart interior"
        )
    return q1, q2


def geometry_at(
    chart: SurfaceChart, q, tol_g: float = DET_G_TOLERANCE
) -> SurfaceGeometry:
    """Metric, unit normal, Weingarten matrix and curvatures at *q*."""
    q1, q2 = _check_chart_point(chart, q)
    r1, r2 = chart.tangents(q1, q2)
    g = np.array([[r1 @ r1, r1 @ r2], [r2 @ r1, r2 @ r2]])
    det_g = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if det_g <= tol_g:
        raise DegenerateChart(
            f"{chart.describe()}: det g = {det_g:.3e} at ({q1:g}, {q2:g}); "
            "coordinate singularity"
        )

    cross = np.cross(r1, r2)
    n = chart.normal_sign * cross / np.linalg.norm(cross)

    r11, r12, r22 = chart.second_derivatives(q1, q2)
    b = np.array([[r11 @ n, r12 @ n], [r12 @ n, r22 @ n]])
    alpha = -b @ np.linalg.inv(g)

    M = -0.5 * float(np.trace(alpha))
    K = float(np.linalg.det(alpha))
    return SurfaceGeometry(g=g, n=n, alpha=alpha, M=M, K=K, tangents=(r1, r2))


def principal_curvatures(geometry: SurfaceGeometry) -> tuple[float, float]:
    """Eigenvalues (kappa_1 <= kappa_2) of alpha; M = -(k1+k2)/2, K = k1*k2."""
    eig = np.linalg.eigvals(geometry.alpha)
    k1, k2 = sorted(float(v) for v in np.real(eig))
    return k1, k2


def geometric_potential(
    M: float, K: float, mu: float | None = None, hbar: float | None = None
) -> float:
    """V_g = -hbar^2/(2 mu) (M^2 - K)."""
    mu = settings.MASS if mu is None else mu
    hbar = settings.HBAR if hbar is None else hbar
    return -(hbar * hbar) / (2.0 * mu) * (M * M - K)


def geometric_potential_at(
    chart: SurfaceChart, q, mu: float | None = None, hbar: float | None = None
) -> float:
    """V_g at *q* written as -hbar^2/(2 mu) ((k1 - k2)/2)^2, never positive."""
    mu = settings.MASS if mu is None else mu
    hbar = settings.HBAR if hbar is None else hbar
    k1, k2 = principal_curvatures(geometry_at(chart, q))
    return -(hbar * hbar) / (2.0 * mu) * (0.5 * (k1 - k2)) ** 2


def laplacian_limit_coefficient(M: float, K: float) -> float:
    """Additive term M^2 - K of the squeezed-shell Laplacian.

    In the zero-thickness limit the 3D Laplacian reduces to
    ``Delta_LB + (M^2 - K) + d^2/dq3^2``; -hbar^2/(2 mu) times this term is
    the geometric potential.
    """
    return M * M - K


def shell_factor(geometry: SurfaceGeometry, q3: float) -> float:
    return 1.0 - 2.0 * geometry.M * q3 + geometry.K * q3 * q3


def shell_metric(chart: SurfaceChart, q, q3: float) -> ShellMetric:
    """Metric G_ij of R = r + q3 n near the surface.

    The tangential block is ``g + [alpha g + (alpha g)^T] q3 + alpha g alpha^T q3^2``,
    ``G_{mu 3} = 0`` and ``G_33 = 1``.
    """
    geo = geometry_at(chart, q)
    factor = shell_factor(geo, q3)
    if factor <= 0:
        raise ShellFold(
            f"{chart.describe()}: 1 - 2Mq3 + Kq3^2 = {factor:.3e} <= 0 at q3={q3:g}"
        )
    ag = geo.alpha @ geo.g
    block = geo.g + (ag + ag.T) * q3 + geo.alpha @ geo.g @ geo.alpha.T * q3 * q3
    G = np.zeros((3, 3))
    G[:2, :2] = block
    G[2, 2] = 1.0
    detG = float(np.linalg.det(G))
    logger.debug(
        "shell_metric %s q=%s q3=%g detG=%.17g closed=%.17g",
        chart.describe(),
        q,
        q3,
        detG,
        geo.det_g * factor**2,
    )
    return ShellMetric(G=G, detG=detG)


def shell_det_closed_form(chart: SurfaceChart, q, q3: float) -> float:
    """g (1 - 2Mq3 + Kq3^2)^2."""
    geo = geometry_at(chart, q)
    return geo.det_g * shell_factor(geo, q3) ** 2


def _central_difference(func: Callable[[float], np.ndarray], x: float, h: float):
    """Fourth-order central first derivative."""
    return (
        -func(x + 2 * h) + 8 * func(x + h) - 8 * func(x - h) + func(x - 2 * h)
    ) / (12 * h)


def brute_force_shell_metric(chart: SurfaceChart, q, q3: float) -> np.ndarray:
    """Metric of the 3D map R(q1, q2, q3) = r + q3 n by finite differences."""
    q1, q2 = _check_chart_point(chart, q)
    h1, h2 = (NORMAL_STEP * s for s in chart.spans)

    def embed(a: float, b: float) -> np.ndarray:
        return chart.point(a, b) + q3 * chart.normal(a, b)

    d1 = _central_difference(lambda t: embed(t, q2), q1, h1)
    d2 = _central_difference(lambda t: embed(q1, t), q2, h2)
    d3 = chart.normal(q1, q2)
    jac = np.column_stack([d1, d2, d3])
    return jac.T @ jac


def normal_divergence(chart: SurfaceChart, q) -> float:
    """Surface divergence of the unit normal, r^mu . d_mu n (equals -2M)."""
    geo = geometry_at(chart, q)
    q1, q2 = float(q[0]), float(q[1])
    h1, h2 = (NORMAL_STEP * s for s in chart.spans)
    dn1 = _central_difference(lambda t: chart.normal(t, q2), q1, h1)
    dn2 = _central_difference(lambda t: chart.normal(q1, t), q2, h2)
    dual1, dual2 = geo.dual_tangents
    return float(dual1 @ dn1 + dual2 @ dn2)


def _surface_gradient(
    chart: SurfaceChart, f: Callable[[float, float], complex], geo, q1, q2
) -> np.ndarray:
    h1, h2 = (NORMAL_STEP * s for s in chart.spans)
    df1 = _central_difference(lambda t: np.asarray(f(t, q2), dtype=complex), q1, h1)
    df2 = _central_difference(lambda t: np.asarray(f(q1, t), dtype=complex), q2, h2)
    dual1, dual2 = geo.dual_tangents
    return dual1 * df1 + dual2 * df2


def geometric_momentum(
    chart: SurfaceChart,
    f: Callable[[float, float], complex],
    q,
    hbar: float | None = None,
) -> np.ndarray:
    """Cartesian components of p f = -i hbar (grad_2 + M n) f at *q*."""
    hbar = settings.HBAR if hbar is None else hbar
    geo = geometry_at(chart, q)
    q1, q2 = float(q[0]), float(q[1])
    grad = _surface_gradient(chart, f, geo, q1, q2)
    return -1j * hbar * (grad + geo.M * geo.n * complex(f(q1, q2)))


def tangency_residual(
    chart: SurfaceChart,
    f: Callable[[float, float], complex],
    q,
    hbar: float | None = None,
) -> float:
    """|(p.n + n.p) f| / |f|; zero because div n = -2M."""
    hbar = settings.HBAR if hbar is None else hbar
    geo = geometry_at(chart, q)
    q1, q2 = float(q[0]), float(q[1])
    f0 = complex(f(q1, q2))

    n_dot_p = geo.n @ geometric_momentum(chart, f, q, hbar)

    h1, h2 = (NORMAL_STEP * s for s in chart.spans)
    dnf1 = _central_difference(lambda t: chart.normal(t, q2) * f(t, q2), q1, h1)
    dnf2 = _central_difference(lambda t: chart.normal(q1, t) * f(q1, t), q2, h2)
    dual1, dual2 = geo.dual_tangents
    p_dot_n = -1j * hbar * (dual1 @ dnf1 + dual2 @ dnf2 + geo.M * f0)

    return float(abs(p_dot_n + n_dot_p) / abs(f0))
