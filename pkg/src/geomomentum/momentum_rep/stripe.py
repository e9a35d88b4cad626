"""The stripe representation: u = ln tan(theta/2), phi.

On the stripe, sin(theta) = sech(u) and cos(theta) = -tanh(u), and the
spherical harmonic becomes

    Y'_lm(u, phi) = N_lm P_l^m(-tanh u) sech(u) e^{i m phi} / sqrt(2 pi)

which is unit normalized in du dphi.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as npleg

from geomomentum import settings
from geomomentum.exceptions import PoleSingularity
from geomomentum.legendre import HarmonicIndex, normalization_nlm, normalized_legendre

logger = logging.getLogger(__name__)

# The u-part of every stripe harmonic is below 1e-17 beyond |u| = 40.
U_CUTOFF = 40.0


def theta_to_u(theta):
    """u = ln tan(theta/2) for theta in (0, pi)."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta <= 0.0) or np.any(theta >= np.pi) or np.any(np.isnan(theta)):
        raise PoleSingularity("theta must lie strictly inside (0, pi)")
    out = np.log(np.tan(0.5 * theta))
    return float(out) if out.ndim == 0 else out


def u_to_theta(u):
    """theta = 2 arctan(e^u), written as pi/2 + gd(u) to avoid overflow."""
    u = np.asarray(u, dtype=float)
    out = 0.5 * np.pi + 2.0 * np.arctan(np.tanh(0.5 * u))
    return float(out) if out.ndim == 0 else out


def stripe_u_part(l: int, m: int, u) -> np.ndarray:  # noqa: E741
    """N_lm P_l^m(-tanh u) sech(u), with sech computed directly."""
    u = np.asarray(u, dtype=float)
    sech = 1.0 / np.cosh(u)
    return normalized_legendre(l, m, -np.tanh(u), sech) * sech


@dataclass(frozen=True)
class StripeHarmonic:
    """Y'_lm on the stripe, callable as ``harmonic(u, phi)``."""

    index: HarmonicIndex

    def u_part(self, u) -> np.ndarray:
        return stripe_u_part(self.index.l, self.index.m, u)

    def __call__(self, u, phi) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        return self.u_part(u) * np.exp(1j * self.index.m * phi) / np.sqrt(2 * np.pi)

    def norm_integral(self) -> float:
        """Integral of |Y'|^2 du dphi over the stripe (phi integral is exact)."""
        from geomomentum.momentum_rep.quadrature import composite_gauss_legendre

        nodes, weights = composite_gauss_legendre(-U_CUTOFF, U_CUTOFF, 0.25)
        return float(np.sum(weights * self.u_part(nodes) ** 2))


def _legendre_derivatives(l: int, m: int, x: np.ndarray):  # noqa: E741
    """C, C', C'' where C = d^m P_l / dx^m."""
    c = npleg.Legendre.basis(l).deriv(m) if m else npleg.Legendre.basis(l)
    return c(x), c.deriv(1)(x), c.deriv(2)(x)


def l2u_apply(l: int, m: int, u, hbar: float | None = None) -> np.ndarray:  # noqa: E741
    """Apply L^2(u, phi) = -hbar^2 cosh^2 u (d_uu + 2 tanh u d_u + d_phiphi + 1)
    to the u-part of Y'_lm (the phi derivative contributes -m^2).

    Writing the u-part as ``N (-1)^m s^{m+1} C(x)`` with ``x = -tanh u``,
    ``s = sech u`` and ``C = d^m P_l/dx^m``, the chain rule (x' = -s^2,
    s' = s x) gives

        (d_uu + 2 tanh u d_u + 1 - m^2) f
            = N (-1)^m s^{m+3} [s^2 C'' - 2(m+1) x C' - m(m+1) C]

    and the cosh^2 u prefactor cancels the two extra powers of s exactly,
    which keeps the result accurate far out on the stripe.
    """
    hbar = settings.HBAR if hbar is None else hbar
    u = np.asarray(u, dtype=float)
    am = abs(m)
    x = -np.tanh(u)
    s = 1.0 / np.cosh(u)
    c0, c1, c2 = _legendre_derivatives(l, am, x)
    bracket = s * s * c2 - 2 * (am + 1) * x * c1 - am * (am + 1) * c0
    sign = -1.0 if am % 2 else 1.0
    if m < 0 and am % 2:
        sign = -sign
    return -(hbar**2) * normalization_nlm(l, am) * sign * s ** (am + 1) * bracket


def l2u_residual(l: int, m: int, u_samples, hbar: float | None = None) -> float:  # noqa: E741
    """Max deviation of L^2(u, phi) Y' from l(l+1) hbar^2 Y', relative to
    the largest value of hbar^2 max(l(l+1), 1) |Y'| on the samples."""
    hbar = settings.HBAR if hbar is None else hbar
    u = np.asarray(u_samples, dtype=float)
    f = stripe_u_part(l, m, u)
    lf = l2u_apply(l, m, u, hbar)
    scale = hbar**2 * max(l * (l + 1), 1) * np.max(np.abs(f))
    residual = float(np.max(np.abs(lf - l * (l + 1) * hbar**2 * f)) / scale)
    logger.debug("l2u_residual (%d,%d) over %d samples: %.3e", l, m, u.size, residual)
    return residual
