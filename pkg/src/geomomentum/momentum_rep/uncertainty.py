"""Momentum moments and uncertainty estimates for rotational states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geomomentum import settings
from geomomentum.exceptions import NonpositiveRadius
from geomomentum.legendre import check_index
from geomomentum.momentum_rep.quadrature import composite_gauss_legendre
from geomomentum.momentum_rep.stripe import U_CUTOFF, stripe_u_part


def _a_squared(l: int, m: int) -> float:  # noqa: E741
    """a_{l,m}^2 = (l^2 - m^2) / ((2l+1)(2l-1)); zero when |m| >= l."""
    if l <= 0 or abs(m) >= l:
        return 0.0
    return (l * l - m * m) / ((2 * l + 1) * (2 * l - 1))


def analytic_second_moment(l: int, m: int) -> float:  # noqa: E741
    """<k^2> = ||p_z Y_lm||^2 / hbar^2 from the l +- 1 matrix elements of p_z.

    p_z Y_lm = i hbar [(l+1) a_{l+1,m} Y_{l+1,m} - l a_{l,m} Y_{l-1,m}].
    """
    check_index(l, m)
    return (l + 1) ** 2 * _a_squared(l + 1, m) + l * l * _a_squared(l, m)


def momentum_uncertainty_au(r_angstrom: float) -> float:
    """Delta p_i = hbar / (sqrt(3) r) in atomic units hbar / a_0."""
    if not r_angstrom > 0:
        raise NonpositiveRadius(f"radius must be > 0, got {r_angstrom}")
    if math.isinf(r_angstrom):
        return 0.0
    return settings.BOHR_RADIUS_ANGSTROM / (math.sqrt(3.0) * r_angstrom)


def _stripe_moment(l: int, m: int, power: int) -> float:  # noqa: E741
    """<z^power> on the unit sphere with z = cos(theta) = -tanh(u)."""
    nodes, weights = composite_gauss_legendre(-U_CUTOFF, U_CUTOFF, 0.25)
    f = stripe_u_part(l, m, nodes)
    return float(np.sum(weights * f * f * (-np.tanh(nodes)) ** power))


def position_variance(l: int, m: int) -> float:  # noqa: E741
    """<z^2> - <z>^2 for Y_lm on the unit sphere."""
    check_index(l, m)
    mean = _stripe_moment(l, m, 1)
    return _stripe_moment(l, m, 2) - mean * mean


@dataclass(frozen=True)
class UncertaintyReport:
    delta_z: float
    delta_k: float
    product: float
    robertson_bound: float

    def as_dict(self) -> dict:
        return {
            "delta_z": self.delta_z,
            "delta_k": self.delta_k,
            "product": self.product,
            "robertson_bound": self.robertson_bound,
        }


def uncertainty_product(l: int, m: int) -> UncertaintyReport:  # noqa: E741
    """Delta z Delta k and the bound 1/2 |<1 - z^2>| from [z, p_z] = i hbar (1 - z^2).

    Y_00 saturates the bound with Delta z Delta k = 1/3.
    """
    check_index(l, m)
    delta_z = math.sqrt(position_variance(l, m))
    delta_k = math.sqrt(analytic_second_moment(l, m))
    bound = 0.5 * abs(1.0 - _stripe_moment(l, m, 2))
    return UncertaintyReport(
        delta_z=delta_z,
        delta_k=delta_k,
        product=delta_z * delta_k,
        robertson_bound=bound,
    )
