"""Numeric evaluation of Q_lm(p_z), the Fourier transform of the stripe harmonic.

Two independent oracles:

* :func:`q_lm_numeric` / :func:`q_lm_numeric_table`: composite Gauss-Legendre
  quadrature of ``N_lm P_l^m(-tanh u) sech(u) e^{iku} / sqrt(2 pi)`` over
  ``u in [-40, 40]`` with panels narrow enough to resolve the oscillation.
* :func:`q_lm_fft`: a trapezoid sum on a dense periodic grid whose period
  puts k exactly on an FFT bin.

Momenta are p_z values; with hbar = 1 they equal the dimensionless
k = p_z / hbar. Amplitudes carry the factor hbar^{-1/2} so that
``integral |Q|^2 dp_z = 1`` for any hbar.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from geomomentum import settings
from geomomentum.exceptions import AccuracyLoss
from geomomentum.legendre import HarmonicIndex
from geomomentum.momentum_rep.stripe import U_CUTOFF, stripe_u_part

logger = logging.getLogger(__name__)

GAUSS_ORDER = 10
MAX_RELIABLE_K = 50.0
K_CHUNK = 128

FFT_POINTS = 2**15
FFT_MIN_PERIOD = 2 * U_CUTOFF


@lru_cache(maxsize=64)
def _panel_nodes(a: float, b: float, panels: int, order: int):
    x, w = leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def composite_gauss_legendre(
    a: float, b: float, max_panel_width: float, order: int = GAUSS_ORDER
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Gauss-Legendre on [a, b]."""
    panels = max(1, int(np.ceil((b - a) / max_panel_width - 1e-9)))
    return _panel_nodes(float(a), float(b), panels, order)


def panel_width_for(k_abs_max: float) -> float:
    """Panel width min(1, 2 pi / |k|) / 4 in u (k dimensionless)."""
    if k_abs_max <= 0:
        return 0.25
    return min(1.0, 2 * np.pi / k_abs_max) / 4


def _as_indices(indices) -> list[HarmonicIndex]:
    return [i if isinstance(i, HarmonicIndex) else HarmonicIndex(*i) for i in indices]


def _check_accuracy(k_dimless: np.ndarray, integrand_l1: float, n_nodes: int) -> None:
    k_max = float(np.max(np.abs(k_dimless))) if k_dimless.size else 0.0
    if k_max > MAX_RELIABLE_K:
        estimated = float(np.finfo(float).eps * integrand_l1 * np.sqrt(n_nodes))
        raise AccuracyLoss(
            f"|k| = {k_max:g} exceeds {MAX_RELIABLE_K:g}; quadrature cancellation "
            f"limits the absolute accuracy to about {estimated:.1e}",
            estimated_error=estimated,
        )


def q_lm_numeric_table(indices, k, hbar: float | None = None) -> np.ndarray:
    """Q for many (l, m) on a shared momentum grid.

    Returns a complex array of shape ``(len(indices), len(k))``. The
    quadrature nodes are chosen per chunk of k so one Fourier kernel is
    shared by all states.
    """
    hbar = settings.HBAR if hbar is None else hbar
    labels = _as_indices(indices)
    k = np.atleast_1d(np.asarray(k, dtype=float))
    kd = k / hbar
    out = np.empty((len(labels), k.size), dtype=complex)

    order = np.argsort(np.abs(kd), kind="stable")
    for start in range(0, k.size, K_CHUNK):
        sel = order[start : start + K_CHUNK]
        chunk = kd[sel]
        k_abs_max = float(np.max(np.abs(chunk)))
        nodes, weights = composite_gauss_legendre(
            -U_CUTOFF, U_CUTOFF, panel_width_for(k_abs_max)
        )
        f = np.stack([stripe_u_part(i.l, i.m, nodes) for i in labels]) * weights
        _check_accuracy(chunk, float(np.max(np.sum(np.abs(f), axis=1))), nodes.size)
        kernel = np.exp(1j * np.outer(nodes, chunk))
        out[:, sel] = f @ kernel
        logger.debug(
            "quadrature chunk |k|<=%.3g: %d nodes, %d states",
            k_abs_max,
            nodes.size,
            len(labels),
        )

    return out / np.sqrt(2 * np.pi * hbar)


def q_lm_numeric(l: int, m: int, k, hbar: float | None = None):  # noqa: E741
    """Q_lm at momentum *k* by composite Gauss-Legendre quadrature.

    Scalar in, complex scalar out; arrays give arrays.
    """
    values = q_lm_numeric_table([(l, m)], k, hbar)[0]
    return complex(values[0]) if np.ndim(k) == 0 else values


def q_lm_fft(l: int, m: int, k: float, hbar: float | None = None) -> complex:  # noqa: E741
    """Q_lm(k) by a periodic trapezoid sum evaluated with an inverse FFT.

    The period T = 2 pi n / |k| (at least 80) places k on bin n, so
    ``sum_j f_j exp(i k u_j) = exp(i k u_0) N ifft(f)[n]``.
    """
    hbar = settings.HBAR if hbar is None else hbar
    HarmonicIndex(l, m)
    kd = float(k) / hbar
    if kd == 0.0:
        n_bin, period = 0, FFT_MIN_PERIOD
    else:
        n_bin = int(np.ceil(FFT_MIN_PERIOD * abs(kd) / (2 * np.pi)))
        period = 2 * np.pi * n_bin / abs(kd)
        n_bin = n_bin if kd > 0 else -n_bin
    step = period / FFT_POINTS
    u0 = -0.5 * period
    u = u0 + step * np.arange(FFT_POINTS)
    samples = stripe_u_part(l, m, u)
    total = np.exp(1j * kd * u0) * FFT_POINTS * np.fft.ifft(samples)[n_bin % FFT_POINTS]
    return complex(total * step / np.sqrt(2 * np.pi * hbar))
