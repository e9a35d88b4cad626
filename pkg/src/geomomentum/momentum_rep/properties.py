"""Momentum grids, amplitude tables and the checkable properties of Q_lm."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import trapezoid

from geomomentum import settings
from geomomentum.legendre import HarmonicIndex
from geomomentum.momentum_rep.closed_form import closed_form_available, q_lm_closed
from geomomentum.momentum_rep.quadrature import q_lm_numeric_table

logger = logging.getLogger(__name__)

NODE_THRESHOLD = 1e-9
POLY_FIT_TOLERANCE = 1e-7
POLY_FIT_KMAX = 5.0


@dataclass(frozen=True)
class MomentumGrid:
    """Strictly increasing momentum samples, optionally closed under k -> -k."""

    k_values: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        k = np.asarray(self.k_values, dtype=float)
        if k.ndim != 1 or k.size < 2:
            raise ValueError("momentum grid needs at least two points")
        if np.any(np.diff(k) <= 0):
            raise ValueError("momentum grid must be strictly increasing")
        if self.symmetric and not np.allclose(k, -k[::-1], rtol=0, atol=1e-12):
            raise ValueError("grid flagged symmetric but not closed under k -> -k")
        k.flags.writeable = False
        object.__setattr__(self, "k_values", k)

    @classmethod
    def uniform(cls, kmax: float | None = None, step: float | None = None):
        """Symmetric grid k = j * step for |k| <= kmax."""
        kmax = settings.KMAX if kmax is None else kmax
        step = settings.KSTEP if step is None else step
        if not (kmax > 0 and step > 0):
            raise ValueError(f"kmax and step must be > 0, got {kmax}, {step}")
        n = int(np.floor(kmax / step + 1e-9))
        return cls(step * np.arange(-n, n + 1, dtype=float), symmetric=True)

    def __len__(self) -> int:
        return self.k_values.size

    def describe(self) -> dict:
        k = self.k_values
        return {
            "kmin": float(k[0]),
            "kmax": float(k[-1]),
            "points": int(k.size),
            "symmetric": self.symmetric,
        }


@dataclass(frozen=True)
class AmplitudeTable:
    index: HarmonicIndex
    grid: MomentumGrid
    values: np.ndarray = field(repr=False)
    source: str  # "closed_form" or "quadrature"

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def norm(self) -> float:
        return float(trapezoid(self.density, self.grid.k_values))


def amplitude_table(
    l: int,  # noqa: E741
    m: int,
    grid: MomentumGrid | None = None,
    hbar: float | None = None,
    source: str | None = None,
) -> AmplitudeTable:
    """Sample Q_lm on *grid*; closed forms for l <= 2 unless *source* says otherwise."""
    index = HarmonicIndex(l, m)
    grid = MomentumGrid.uniform() if grid is None else grid
    if source is None:
        source = "closed_form" if closed_form_available(l, m) else "quadrature"
    if source == "closed_form":
        values = q_lm_closed(l, m, grid.k_values, hbar)
    elif source == "quadrature":
        values = q_lm_numeric_table([index], grid.k_values, hbar)[0]
    else:
        raise ValueError(f"unknown amplitude source {source!r}")
    return AmplitudeTable(index=index, grid=grid, values=values, source=source)


def distribution(
    l: int, m: int, grid: MomentumGrid | None = None, hbar: float | None = None  # noqa: E741
) -> np.ndarray:
    """Two-column array of (k, |Q_lm(k)|^2)."""
    table = amplitude_table(l, m, grid, hbar)
    logger.debug("distribution (%d,%d) norm=%.12f", l, m, table.norm())
    return np.column_stack([table.grid.k_values, table.density])


def momentum_parity(l: int, m: int) -> int:  # noqa: E741
    """Q_lm(-k) = (-1)^(l+m) Q_lm(k): the u-integrand has parity (-1)^(l+m)."""
    return -1 if (l + m) % 2 else 1


def real_amplitude(l: int, m: int, values: np.ndarray) -> np.ndarray:  # noqa: E741
    """Rotate by (-i)^((l+m) mod 2) so the amplitude is real."""
    rotated = values * (-1j) ** ((l + m) % 2)
    return np.real(rotated)


def symmetry_residuals(
    l: int, m: int, grid: MomentumGrid | None = None, hbar: float | None = None  # noqa: E741
) -> dict[str, float]:
    """Max deviations from Q_{l,-m} = (-1)^m Q_lm and Q(-k) = (-1)^(l+m) Q(k)."""
    grid = MomentumGrid.uniform() if grid is None else grid
    if not grid.symmetric:
        raise ValueError("symmetry check needs a symmetric grid")
    q, q_neg_m = q_lm_numeric_table([(l, m), (l, -m)], grid.k_values, hbar)
    m_sign = -1 if m % 2 else 1
    return {
        "m_reflection": float(np.max(np.abs(q_neg_m - m_sign * q))),
        "k_reflection": float(np.max(np.abs(q[::-1] - momentum_parity(l, m) * q))),
    }


def normalization_integral(
    l: int, m: int, grid: MomentumGrid | None = None, hbar: float | None = None  # noqa: E741
) -> float:
    return amplitude_table(l, m, grid, hbar, source="quadrature").norm()


def orthogonality_matrix(
    m: int, l_max: int, grid: MomentumGrid | None = None, hbar: float | None = None
) -> np.ndarray:
    """Gram matrix of Q_{l,m} for l = |m| .. l_max by trapezoid quadrature in k."""
    grid = MomentumGrid.uniform() if grid is None else grid
    ls = list(range(abs(m), l_max + 1))
    if not ls:
        raise ValueError(f"|m| = {abs(m)} exceeds l_max = {l_max}")
    table = q_lm_numeric_table([(l, m) for l in ls], grid.k_values, hbar)
    weighted = table * trapezoid_weights(grid.k_values)
    return np.conj(table) @ weighted.T


def trapezoid_weights(k: np.ndarray) -> np.ndarray:
    dk = np.diff(k)
    w = np.zeros_like(k)
    w[:-1] += 0.5 * dk
    w[1:] += 0.5 * dk
    return w


def count_sign_changes(real: np.ndarray) -> int:
    """Sign changes, ignoring samples below 1e-9 of the peak."""
    significant = real[np.abs(real) > NODE_THRESHOLD * np.max(np.abs(real))]
    return int(np.count_nonzero(np.diff(np.sign(significant)) != 0))


def node_count(
    l: int, m: int, grid: MomentumGrid | None = None, hbar: float | None = None  # noqa: E741
) -> int:
    """Nodes of Q_lm on the real line; equals l - |m|."""
    table = amplitude_table(l, m, grid, hbar)
    return count_sign_changes(real_amplitude(l, m, table.values))


@dataclass(frozen=True)
class PolynomialFit:
    degree: int
    residual: float
    parity: int
    coefficients: tuple[float, ...]


def polynomial_structure_check(
    l: int, m: int, kmax: float = POLY_FIT_KMAX, points: int = 101  # noqa: E741
) -> PolynomialFit:
    """De-envelope Q_lm and find the lowest polynomial degree that fits it.

    Q_lm is multiplied by cosh(pi k/2) (even m) or sinh(pi k/2) (odd m)
    and least-squares fitted; the reported degree is the smallest one with
    relative residual <= 1e-7 and the residual is that of the degree-l fit.
    """
    index = HarmonicIndex(l, m)
    k = np.linspace(-kmax, kmax, points)
    values = q_lm_numeric_table([index], k)[0]
    envelope_inverse = np.cosh(0.5 * np.pi * k) if m % 2 == 0 else np.sinh(0.5 * np.pi * k)
    data = real_amplitude(l, m, values) * envelope_inverse
    scale = np.max(np.abs(data))

    def fit(deg: int):
        poly = Polynomial.fit(k, data, deg).convert()
        return poly, float(np.max(np.abs(poly(k) - data)) / scale)

    degree = l
    for deg in range(0, l + 1):
        if fit(deg)[1] <= POLY_FIT_TOLERANCE:
            degree = deg
            break
    poly, residual = fit(l)
    coef = poly.coef
    even = float(np.max(np.abs(coef[0::2]), initial=0.0))
    odd = float(np.max(np.abs(coef[1::2]), initial=0.0))
    parity = 1 if odd <= 1e-6 * max(even, odd) else -1
    return PolynomialFit(
        degree=degree,
        residual=residual,
        parity=parity,
        coefficients=tuple(float(c) for c in coef),
    )


def second_moment(
    l: int, m: int, grid: MomentumGrid | None = None, hbar: float | None = None  # noqa: E741
) -> float:
    """<k^2> = integral of k^2 |Q_lm|^2 dk by trapezoid quadrature."""
    table = amplitude_table(l, m, grid, hbar, source="quadrature")
    k = table.grid.k_values
    return float(trapezoid(k * k * table.density, k))
