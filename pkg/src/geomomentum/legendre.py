"""Associated Legendre functions and Condon-Shortley spherical harmonics.

The flattened basis order used throughout the package is
``index = l*l + l + m``, i.e. (0,0), (1,-1), (1,0), (1,1), (2,-2), ...
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from geomomentum.exceptions import InvalidIndex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HarmonicIndex:
    """Quantum numbers (l, m) of a spherical harmonic."""

    l: int  # noqa: E741
    m: int

    def __post_init__(self):
        check_index(self.l, self.m)

    @property
    def basis_index(self) -> int:
        return basis_index(self.l, self.m)

    def __str__(self) -> str:
        return f"({self.l},{self.m})"


def check_index(l: int, m: int) -> None:  # noqa: E741
    """Raise :class:`InvalidIndex` unless ``l >= 0`` and ``|m| <= l``."""
    if int(l) != l or int(m) != m:
        raise InvalidIndex(f"l and m must be integers, got l={l!r}, m={m!r}")
    if l < 0:
        raise InvalidIndex(f"l must be >= 0, got {l}")
    if abs(m) > l:
        raise InvalidIndex(f"|m| must be <= l, got l={l}, m={m}")


def basis_index(l: int, m: int) -> int:  # noqa: E741
    return l * l + l + m


def basis_size(l_max: int) -> int:
    return (l_max + 1) ** 2


def basis_labels(l_max: int) -> list[HarmonicIndex]:
    """All (l, m) with l <= l_max in flattened basis order."""
    return [HarmonicIndex(l, m) for l in range(l_max + 1) for m in range(-l, l + 1)]


def assoc_legendre(l: int, m: int, x, s=None) -> np.ndarray:  # noqa: E741
    """Condon-Shortley associated Legendre function P_l^m(x) for 0 <= m <= l.

    Uses the upward recurrence in l starting from
    ``P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}``.

    *s* may be passed as an exactly computed ``sqrt(1 - x^2)``; callers on
    the stripe pass ``sech(u)`` to avoid the cancellation in ``1 - tanh^2``.
    """
    if m < 0 or m > l:
        raise InvalidIndex(f"assoc_legendre requires 0 <= m <= l, got l={l}, m={m}")
    x = np.asarray(x, dtype=float)
    if s is None:
        s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    else:
        s = np.asarray(s, dtype=float)

    double_factorial = np.prod(np.arange(1, 2 * m, 2, dtype=float))
    p_mm = (-1.0) ** m * double_factorial * s**m
    if l == m:
        return p_mm * np.ones_like(x)

    p_prev = p_mm
    p_curr = x * (2 * m + 1) * p_mm
    for n in range(m + 2, l + 1):
        p_next = (x * (2 * n - 1) * p_curr - (n + m - 1) * p_prev) / (n - m)
        p_prev, p_curr = p_curr, p_next
    return p_curr


def normalization_nlm(l: int, m: int) -> float:  # noqa: E741
    """Return N_lm = sqrt((2l+1)/2 * (l-m)!/(l+m)!).

    This is the factor that makes the u-part of the stripe harmonic unit
    normalized. A printed variant with ``(l-1)!`` in the numerator does not
    normalize and does not reproduce Q_00 = sqrt(pi)/2 sech(pi k/2).
    """
    check_index(l, m)
    log_ratio = gammaln(l - m + 1) - gammaln(l + m + 1)
    return float(np.sqrt((2 * l + 1) / 2.0 * np.exp(log_ratio)))


def normalized_legendre(l: int, m: int, x, s=None) -> np.ndarray:  # noqa: E741
    """N_lm P_l^m(x) for any |m| <= l.

    Negative m uses the reflection N_{l,-m} P_l^{-m} = (-1)^m N_lm P_l^m.
    """
    check_index(l, m)
    am = abs(m)
    value = normalization_nlm(l, am) * assoc_legendre(l, am, x, s)
    if m < 0 and am % 2:
        value = -value
    return value


def _normalized_theta_derivative(l: int, m: int, theta) -> np.ndarray:  # noqa: E741
    """d/dtheta of N_lm P_l^m(cos theta), non-singular at the poles."""
    am = abs(m)
    x = np.cos(theta)
    s = np.sin(theta)
    if am == 0:
        dp = assoc_legendre(l, 1, x, s) if l >= 1 else np.zeros_like(x)
    else:
        upper = assoc_legendre(l, am + 1, x, s) if am + 1 <= l else np.zeros_like(x)
        lower = assoc_legendre(l, am - 1, x, s)
        dp = 0.5 * (upper - (l + am) * (l - am + 1) * lower)
    value = normalization_nlm(l, am) * dp
    if m < 0 and am % 2:
        value = -value
    return value


def spherical_harmonic(l: int, m: int, theta, phi) -> np.ndarray:  # noqa: E741
    """Condon-Shortley Y_lm(theta, phi), orthonormal on the unit sphere."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    radial = normalized_legendre(l, m, np.cos(theta), np.sin(theta))
    return radial * np.exp(1j * m * phi) / np.sqrt(2.0 * np.pi)


def harmonic_theta_derivative(l: int, m: int, theta, phi) -> np.ndarray:  # noqa: E741
    """Analytic d/dtheta of :func:`spherical_harmonic`."""
    check_index(l, m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return (
        _normalized_theta_derivative(l, m, theta)
        * np.exp(1j * m * phi)
        / np.sqrt(2.0 * np.pi)
    )
