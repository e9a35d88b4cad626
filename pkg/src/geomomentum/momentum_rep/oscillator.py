"""Comparison of |Q_l0|^2 with one-dimensional harmonic-oscillator densities."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.ndimage import gaussian_filter1d

from geomomentum.legendre import check_index
from geomomentum.momentum_rep.properties import MomentumGrid, amplitude_table
from geomomentum.momentum_rep.uncertainty import analytic_second_moment

logger = logging.getLogger(__name__)

CENTRAL_MASS = 0.99


def hermite_functions(n_max: int, x) -> np.ndarray:
    """Normalized Hermite functions psi_0 .. psi_{n_max} at *x*.

    Uses the stable recurrence
    ``psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}``.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi**-0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * x * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out


def ho_momentum_density(n: int, k, beta: float) -> np.ndarray:
    """|phi_n(k/beta)|^2 / beta, with <k^2> = beta^2 (n + 1/2)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    psi = hermite_functions(n, np.asarray(k, dtype=float) / beta)[n]
    return psi * psi / beta


def variance_matched_beta(l: int, n: int) -> float:  # noqa: E741
    """beta such that the n-th oscillator density has the <k^2> of Y_l0."""
    return float(np.sqrt(analytic_second_moment(l, 0) / (n + 0.5)))


@dataclass(frozen=True)
class HoComparison:
    l: int  # noqa: E741
    n: int
    beta: float
    sup_diff: float
    l1_diff: float
    envelope_l1_diff: float
    width_ratio: float

    def as_dict(self) -> dict:
        return {
            "l": self.l,
            "n": self.n,
            "beta": self.beta,
            "sup_diff": self.sup_diff,
            "l1_diff": self.l1_diff,
            "envelope_l1_diff": self.envelope_l1_diff,
            "width_ratio": self.width_ratio,
        }


def central_width(k: np.ndarray, density: np.ndarray, mass: float = CENTRAL_MASS) -> float:
    """Width of the interval holding the central *mass* of the probability."""
    cdf = cumulative_trapezoid(density, k, initial=0.0)
    cdf = cdf / cdf[-1]
    tail = 0.5 * (1.0 - mass)
    lo = np.interp(tail, cdf, k)
    hi = np.interp(1.0 - tail, cdf, k)
    return float(hi - lo)


def compare_ho(
    l: int,  # noqa: E741
    n: int | None = None,
    matching: str = "variance",
    beta: float | None = None,
    grid: MomentumGrid | None = None,
) -> HoComparison:
    """Distances between |Q_l0|^2 and the n-th oscillator momentum density.

    ``sup_diff`` and ``l1_diff`` compare the raw densities. Because the
    oscillation phases of the two families differ for large l,
    ``envelope_l1_diff`` compares both after Gaussian smoothing over the
    mean lobe spacing 2A/(n+1), with A = sqrt(2 <k^2>) the classical
    turning point. ``width_ratio`` compares the central-99% intervals.
    """
    check_index(l, 0)
    n = l if n is None else n
    grid = MomentumGrid.uniform(20.0, 0.02) if grid is None else grid
    if matching == "variance":
        beta = variance_matched_beta(l, n)
    elif matching == "manual":
        if beta is None:
            raise ValueError("manual matching requires beta")
    else:
        raise ValueError(f"unknown matching {matching!r}")

    k = grid.k_values
    rotor = amplitude_table(l, 0, grid).density
    oscillator = ho_momentum_density(n, k, beta)
    diff = np.abs(rotor - oscillator)

    step = float(np.mean(np.diff(k)))
    turning_point = np.sqrt(2.0 * analytic_second_moment(l, 0))
    sigma = 2.0 * turning_point / (n + 1) / step
    smooth_rotor = gaussian_filter1d(rotor, sigma, mode="constant")
    smooth_oscillator = gaussian_filter1d(oscillator, sigma, mode="constant")

    result = HoComparison(
        l=l,
        n=n,
        beta=float(beta),
        sup_diff=float(np.max(diff)),
        l1_diff=float(trapezoid(diff, k)),
        envelope_l1_diff=float(trapezoid(np.abs(smooth_rotor - smooth_oscillator), k)),
        width_ratio=central_width(k, rotor) / central_width(k, oscillator),
    )
    logger.debug("compare_ho %s", result)
    return result
