"""Verification suites aggregating the numerical contracts of each module.

Every suite returns a list of checks ``{"check", "residual", "threshold"}``
so reports show how close each contract is to its threshold, not only
whether it passed.
"""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid

from geomomentum import settings
from geomomentum.legendre import basis_labels, spherical_harmonic
from geomomentum.momentum_rep.closed_form import (
    CLOSED_FORMS,
    difference_residual,
    phase_alignment,
    q_lm_closed,
)
from geomomentum.momentum_rep.properties import (
    MomentumGrid,
    count_sign_changes,
    momentum_parity,
    polynomial_structure_check,
    real_amplitude,
    trapezoid_weights,
)
from geomomentum.momentum_rep.quadrature import q_lm_numeric_table
from geomomentum.momentum_rep.stripe import l2u_residual
from geomomentum.momentum_rep.uncertainty import analytic_second_moment
from geomomentum.sphere_operators import apply_to_harmonic, verify_algebra
from geomomentum.surface_geometry import (
    brute_force_shell_metric,
    geometric_momentum,
    geometric_potential,
    geometric_potential_at,
    geometry_at,
    normal_divergence,
    principal_curvatures,
    shell_factor,
    shell_metric,
    tangency_residual,
)
from geomomentum.surfaces.registry import parse_surface

logger = logging.getLogger(__name__)

ORACLE_TOLERANCE = 1e-8
NORMALIZATION_TOLERANCE = 1e-6
SYMMETRY_TOLERANCE = 1e-10
DIFFERENCE_TOLERANCE = 1e-10
L2U_TOLERANCE = 1e-9
MOMENT_TOLERANCE = 1e-8
POLYNOMIAL_TOLERANCE = 1e-7

UNIT_NORMAL_TOLERANCE = 1e-12
DIVERGENCE_TOLERANCE = 1e-6
SHELL_DET_TOLERANCE = 1e-10
SHELL_BRUTE_FORCE_TOLERANCE = 1e-6
POTENTIAL_TOLERANCE = 1e-10
TANGENCY_TOLERANCE = 1e-6
SPHERE_MOMENTUM_TOLERANCE = 1e-6

DEFAULT_SURFACES = ("sphere", "cylinder", "torus:R=2,a=0.5", "plane", "catenoid")
SHELL_OFFSETS = (0.0, 0.01, -0.01, 0.1, -0.1)


def _check(name: str, residual: float, threshold: float) -> dict:
    return {"check": name, "residual": float(residual), "threshold": float(threshold)}


# --- momentum representation ----------------------------------------------


def verify_qlm(
    l_max: int = 6, grid: MomentumGrid | None = None, hbar: float | None = None
) -> list[dict]:
    """Closed forms against quadrature, then normalization, orthogonality,
    symmetries, nodes and moments of every Q_lm with l <= l_max."""
    hbar = settings.HBAR if hbar is None else hbar
    grid = MomentumGrid.uniform(20.0, 0.02) if grid is None else grid
    checks = []

    k_oracle = np.linspace(-10.0, 10.0, 201)
    k_difference = np.round(np.arange(-100, 101) * 0.1, 12)
    oracle = q_lm_numeric_table(list(CLOSED_FORMS), k_oracle * hbar, hbar)
    for row, (l, m) in zip(oracle, CLOSED_FORMS):
        closed = q_lm_closed(l, m, k_oracle * hbar, hbar)
        aligned = phase_alignment(closed, row) * closed
        checks.append(_check(f"oracle ({l},{m})", np.max(np.abs(aligned - row)), ORACLE_TOLERANCE))
        modulus = np.abs(q_lm_closed(l, m, k_difference * hbar, hbar))
        residual = difference_residual(l, m, k_difference * hbar, hbar) / (1.0 + modulus)
        checks.append(_check(f"difference ({l},{m})", np.max(residual), DIFFERENCE_TOLERANCE))

    labels = basis_labels(l_max)
    k = grid.k_values
    table = q_lm_numeric_table(labels, k * hbar, hbar) * np.sqrt(hbar)
    density = np.abs(table) ** 2
    norms = trapezoid(density, k, axis=1)
    moments = trapezoid(k * k * density, k, axis=1)
    row_of = {(i.l, i.m): n for n, i in enumerate(labels)}

    u_samples = np.linspace(-30.0, 30.0, 601)
    for n, index in enumerate(labels):
        l, m = index.l, index.m  # noqa: E741
        q = table[n]
        checks.append(_check(f"normalization {index}", abs(norms[n] - 1.0), NORMALIZATION_TOLERANCE))
        checks.append(
            _check(
                f"second moment {index}",
                abs(moments[n] - analytic_second_moment(l, m)),
                MOMENT_TOLERANCE,
            )
        )
        if grid.symmetric:
            parity = momentum_parity(l, m)
            m_sign = -1 if m % 2 else 1
            sym = max(
                np.max(np.abs(q[::-1] - parity * q)),
                np.max(np.abs(table[row_of[(l, -m)]] - m_sign * q)),
            )
            checks.append(_check(f"symmetry {index}", sym, SYMMETRY_TOLERANCE))
        nodes = count_sign_changes(real_amplitude(l, m, q))
        checks.append(_check(f"nodes {index}", abs(nodes - (l - abs(m))), 0.0))
        checks.append(_check(f"l2u {index}", l2u_residual(l, m, u_samples, hbar), L2U_TOLERANCE))
        if m >= 0:
            fit = polynomial_structure_check(l, m)
            parity_error = 0.0 if fit.parity == (-1) ** l else 1.0
            checks.append(
                _check(f"polynomial {index}", max(fit.residual, parity_error), POLYNOMIAL_TOLERANCE)
            )

    for m in range(-l_max, l_max + 1):
        rows = [row_of[(l, m)] for l in range(abs(m), l_max + 1)]
        block = table[rows]
        gram = np.conj(block) @ (block * trapezoid_weights(k)).T
        error = np.max(np.abs(gram - np.eye(len(rows))))
        checks.append(_check(f"orthogonality m={m}", error, NORMALIZATION_TOLERANCE))

    logger.debug("verify_qlm l_max=%d: %d checks", l_max, len(checks))
    return checks


# --- surface geometry ------------------------------------------------------


def _curvature_radius(geo) -> float:
    kmax = max(abs(v) for v in principal_curvatures(geo))
    return 1.0 / kmax if kmax > 1e-12 else 1.0


def verify_surface(spec: str, points: int = 20, seed: int = 0, hbar: float | None = None) -> list[dict]:
    """Geometry contracts at random interior points of one chart."""
    hbar = settings.HBAR if hbar is None else hbar
    chart = parse_surface(spec)
    name = chart.describe()
    worst: dict[str, float] = {
        "unit normal": 0.0,
        "normal divergence": 0.0,
        "shell det": 0.0,
        "shell brute force": 0.0,
        "potential sign": 0.0,
        "potential forms": 0.0,
        "tangency": 0.0,
    }

    def test_function(q1: float, q2: float) -> complex:
        return np.exp(1j * (0.7 * q1 - 0.3 * q2)) * (1.5 + np.cos(q1))

    for q in chart.interior_points(points, seed=seed):
        geo = geometry_at(chart, q)
        worst["unit normal"] = max(worst["unit normal"], abs(np.linalg.norm(geo.n) - 1.0))
        div = normal_divergence(chart, q)
        worst["normal divergence"] = max(
            worst["normal divergence"], abs(div + 2 * geo.M) / max(1.0, abs(2 * geo.M))
        )
        radius = _curvature_radius(geo)
        for s in SHELL_OFFSETS:
            q3 = s * radius
            shell = shell_metric(chart, q, q3)
            closed = geo.det_g * shell_factor(geo, q3) ** 2
            worst["shell det"] = max(worst["shell det"], abs(shell.detG - closed) / abs(closed))
            brute = brute_force_shell_metric(chart, q, q3)
            worst["shell brute force"] = max(
                worst["shell brute force"], float(np.max(np.abs(brute - shell.G)))
            )
        v_at = geometric_potential_at(chart, q, hbar=hbar)
        worst["potential sign"] = max(worst["potential sign"], max(v_at, 0.0))
        worst["potential forms"] = max(
            worst["potential forms"], abs(geometric_potential(geo.M, geo.K, hbar=hbar) - v_at)
        )
        worst["tangency"] = max(worst["tangency"], tangency_residual(chart, test_function, q, hbar))

    thresholds = {
        "unit normal": UNIT_NORMAL_TOLERANCE,
        "normal divergence": DIVERGENCE_TOLERANCE,
        "shell det": SHELL_DET_TOLERANCE,
        "shell brute force": SHELL_BRUTE_FORCE_TOLERANCE,
        "potential sign": 0.0,
        "potential forms": POTENTIAL_TOLERANCE,
        "tangency": TANGENCY_TOLERANCE,
    }
    return [_check(f"{name} {key}", worst[key], thresholds[key]) for key in worst]


def verify_sphere_momentum(l_max: int = 3, points: int = 10, hbar: float | None = None) -> dict:
    """Geometric momentum of Y_lm on the unit sphere against the explicit
    p_x, p_y, p_z differential operators."""
    hbar = settings.HBAR if hbar is None else hbar
    chart = parse_surface("sphere:r=1")
    worst = 0.0
    for index in basis_labels(l_max):

        def harmonic(theta, phi, l=index.l, m=index.m):  # noqa: E741
            return spherical_harmonic(l, m, theta, phi)

        for theta, phi in chart.interior_points(points, seed=index.basis_index):
            p = geometric_momentum(chart, harmonic, (theta, phi), hbar)
            explicit = np.array(
                [complex(apply_to_harmonic(op, index.l, index.m, theta, phi, hbar)) for op in ("px", "py", "pz")]
            )
            worst = max(worst, float(np.max(np.abs(p - explicit))))
    return _check(f"sphere geometric momentum l<={l_max}", worst, SPHERE_MOMENTUM_TOLERANCE)


def verify_geometry(
    surfaces=DEFAULT_SURFACES, points: int = 20, hbar: float | None = None
) -> list[dict]:
    checks = []
    for spec in surfaces:
        checks.extend(verify_surface(spec, points=points, hbar=hbar))
    checks.append(verify_sphere_momentum(hbar=hbar))
    logger.debug("verify_geometry over %d surfaces: %d checks", len(surfaces), len(checks))
    return checks


SUITES: dict[str, Callable[..., list[dict]]] = {
    "algebra": verify_algebra,
    "geometry": verify_geometry,
    "qlm": verify_qlm,
}
