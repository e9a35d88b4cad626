"""Closed forms of Q_lm for l <= 2 and the difference equation they satisfy.

Each amplitude is ``coefficient * poly(k) * envelope(pi k / 2)`` with
k = p_z / hbar and envelope sech (even m) or csch (odd m). For odd m the
polynomial has a factor k that removes the csch pole at k = 0.

The printed overall signs depend on the Legendre phase convention; the
Condon-Shortley quadrature values differ from these by a global sign for
(1, +-1). Compare with :func:`phase_alignment`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from geomomentum import settings
from geomomentum.exceptions import InvalidIndex, PoleHit
from geomomentum.legendre import check_index

logger = logging.getLogger(__name__)

POLE_TOLERANCE = 1e-9
SERIES_THRESHOLD = 1e-4

_SQRT_PI = np.sqrt(np.pi)


@dataclass(frozen=True)
class ClosedForm:
    coefficient: complex
    poly: Polynomial
    envelope: str  # "sech" or "csch"


CLOSED_FORMS: dict[tuple[int, int], ClosedForm] = {
    (0, 0): ClosedForm(0.5 * _SQRT_PI, Polynomial([1.0]), "sech"),
    (1, 0): ClosedForm(-0.5j * np.sqrt(3 * np.pi), Polynomial([0.0, 1.0]), "sech"),
    (1, 1): ClosedForm(0.5 * np.sqrt(1.5 * np.pi), Polynomial([0.0, 1.0]), "csch"),
    (1, -1): ClosedForm(-0.5 * np.sqrt(1.5 * np.pi), Polynomial([0.0, 1.0]), "csch"),
    (2, 0): ClosedForm(-_SQRT_PI * np.sqrt(5) / 8, Polynomial([-1.0, 0.0, 3.0]), "sech"),
    (2, 1): ClosedForm(0.25j * np.sqrt(7.5 * np.pi), Polynomial([0.0, 0.0, 1.0]), "csch"),
    (2, -1): ClosedForm(-0.25j * np.sqrt(7.5 * np.pi), Polynomial([0.0, 0.0, 1.0]), "csch"),
    (2, 2): ClosedForm(np.sqrt(7.5 * np.pi) / 8, Polynomial([1.0, 0.0, 1.0]), "sech"),
    (2, -2): ClosedForm(np.sqrt(7.5 * np.pi) / 8, Polynomial([1.0, 0.0, 1.0]), "sech"),
}


def closed_form_available(l: int, m: int) -> bool:  # noqa: E741
    return (l, m) in CLOSED_FORMS


def _lookup(l: int, m: int) -> ClosedForm:  # noqa: E741
    check_index(l, m)
    try:
        return CLOSED_FORMS[(l, m)]
    except KeyError:
        raise InvalidIndex(f"no closed form for (l={l}, m={m}); only l <= 2") from None


def _check_poles(form: ClosedForm, k: np.ndarray) -> None:
    """sech poles sit at odd multiples of i, csch poles at even multiples;
    k = 0 is removable for csch because the polynomial vanishes there."""
    near_axis = np.abs(k.real) < POLE_TOLERANCE
    imag = k.imag
    nearest = np.round(imag)
    on_integer = near_axis & (np.abs(imag - nearest) < POLE_TOLERANCE)
    odd = nearest.astype(int) % 2 == 1
    if form.envelope == "sech":
        hits = on_integer & odd
    else:
        hits = on_integer & ~odd & (nearest != 0)
    if np.any(hits):
        raise PoleHit(f"{form.envelope} pole at k = {k[hits][0]!r}")


def _sech(x):
    return 1.0 / np.cosh(x)


def _reduced_csch_product(k: np.ndarray) -> np.ndarray:
    """k csch(pi k / 2), continuous at k = 0 with value 2/pi."""
    x = 0.5 * np.pi * k
    small = np.abs(x) < SERIES_THRESHOLD
    safe_x = np.where(small, 1.0, x)
    out = k / np.sinh(safe_x)
    x2 = x * x
    series = (2.0 / np.pi) * (1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0)
    return np.where(small, series, out)


def _envelope_times_poly(form: ClosedForm, k: np.ndarray) -> np.ndarray:
    if form.envelope == "sech":
        return form.poly(k) * _sech(0.5 * np.pi * k)
    # poly(k) = k * poly(k)/k; the constant term of an odd-m polynomial is zero.
    reduced = Polynomial(form.poly.coef[1:]) if form.poly.degree() > 0 else form.poly
    return reduced(k) * _reduced_csch_product(k)


def q_lm_closed(l: int, m: int, z, hbar: float | None = None):  # noqa: E741
    """Closed-form Q_lm at momentum *z* (real or complex) for l <= 2."""
    hbar = settings.HBAR if hbar is None else hbar
    form = _lookup(l, m)
    k = np.asarray(z, dtype=complex) / hbar
    _check_poles(form, np.atleast_1d(k))
    values = form.coefficient * _envelope_times_poly(form, k) / np.sqrt(hbar)
    if np.ndim(z) == 0:
        return complex(values)
    return values


def difference_residual(l: int, m: int, k, hbar: float | None = None):  # noqa: E741
    """|LHS - RHS| of the momentum-space difference equation

        l(l+1) Q(k) = 1/2 A Q(k) + 1/4 (A - 2ik) Q(k - 2i) + 1/4 (A + 2ik) Q(k + 2i)

    with A = k^2 + m^2 - 1 and k = p_z / hbar. The shifted amplitudes use
    sech(x -+ i pi) = -sech(x) and csch(x -+ i pi) = -csch(x), so
    Q(k -+ 2i) = -c poly(k -+ 2i) envelope(pi k / 2) and the residual is
    ``|c envelope(pi k/2) R(k)|`` for a polynomial R that vanishes identically.
    """
    hbar = settings.HBAR if hbar is None else hbar
    form = _lookup(l, m)
    kk = np.asarray(k, dtype=float) / hbar
    a = kk * kk + m * m - 1
    p = form.poly
    r = (
        l * (l + 1) * p(kk)
        - 0.5 * a * p(kk)
        + 0.25 * (a - 2j * kk) * p(kk - 2j)
        + 0.25 * (a + 2j * kk) * p(kk + 2j)
    )
    if form.envelope == "sech":
        envelope = _sech(0.5 * np.pi * kk)
        residual = np.abs(form.coefficient * r * envelope)
    else:
        # r inherits the factor k of poly for odd m, so r/k is finite at 0.
        safe_k = np.where(kk == 0.0, 1.0, kk)
        residual = np.where(
            kk == 0.0,
            0.0,
            np.abs(form.coefficient * (r / safe_k) * _reduced_csch_product(kk)),
        )
    residual = residual / np.sqrt(hbar)
    return float(residual) if np.ndim(k) == 0 else residual


def phase_alignment(reference, values) -> complex:
    """Unit phase c minimizing |c * reference - values| in least squares."""
    overlap = np.vdot(np.asarray(reference), np.asarray(values))
    if abs(overlap) == 0:
        return 1.0 + 0j
    return complex(overlap / abs(overlap))
