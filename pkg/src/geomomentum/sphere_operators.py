"""Geometric momentum and angular momentum on the unit sphere.

With the rescaling p_i r -> p_i all six generators carry units of hbar:

    p_x = -i hbar (cos(theta) cos(phi) d_theta - sin(phi)/sin(theta) d_phi - sin(theta) cos(phi))
    p_y = -i hbar (cos(theta) sin(phi) d_theta + cos(phi)/sin(theta) d_phi - sin(theta) sin(phi))
    p_z =  i hbar (sin(theta) d_theta + cos(theta))
    L_x =  i hbar (sin(phi) d_theta + cot(theta) cos(phi) d_phi)
    L_y = -i hbar (cos(phi) d_theta - cot(theta) sin(phi) d_phi)
    L_z = -i hbar d_phi

Matrices are taken in the Condon-Shortley basis Y_lm, l <= l_max, in the
flattened order of :func:`geomomentum.legendre.basis_index`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import expm

from geomomentum import settings
from geomomentum.exceptions import (
    GridTooCoarse,
    InvalidIndex,
    PoleSingularity,
    TruncationTooTight,
)
from geomomentum.legendre import (
    basis_labels,
    basis_size,
    check_index,
    harmonic_theta_derivative,
    spherical_harmonic,
)
from geomomentum.momentum_rep.quadrature import composite_gauss_legendre, panel_width_for
from geomomentum.momentum_rep.stripe import theta_to_u, u_to_theta

logger = logging.getLogger(__name__)

FIRST_ORDER_OPERATORS = ("px", "py", "pz", "Lx", "Ly", "Lz")
OPERATOR_IDS = FIRST_ORDER_OPERATORS + ("L2",)

HERMITIAN_TOLERANCE = 1e-10
COMMUTATOR_TOLERANCE = 1e-8
ROTATION_TOLERANCE = 1e-6


def _check_op(op_id: str) -> None:
    if op_id not in OPERATOR_IDS:
        raise ValueError(f"unknown operator {op_id!r}; expected one of {', '.join(OPERATOR_IDS)}")


# --- quadrature grid and harmonic transform ---------------------------------


@dataclass(frozen=True)
class SphereGrid:
    """Gauss-Legendre nodes in cos(theta) times uniform nodes in phi."""

    n_theta: int
    n_phi: int
    theta: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)  # shape (n_theta, n_phi)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_theta, self.n_phi)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.theta, self.phi, indexing="ij")

    def max_degree(self) -> int:
        """Largest l_max the grid integrates products of harmonics for exactly."""
        return min(self.n_theta - 1, (self.n_phi - 2) // 2)


def sphere_grid(n_theta: int, n_phi: int) -> SphereGrid:
    if n_theta < 1 or n_phi < 1:
        raise ValueError(f"grid sizes must be positive, got {n_theta} x {n_phi}")
    x, w = leggauss(n_theta)
    # leggauss orders nodes by increasing x; flip so theta increases.
    theta = np.arccos(x[::-1])
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    weights = np.outer(w[::-1], np.full(n_phi, 2 * np.pi / n_phi))
    for arr in (theta, phi, weights):
        arr.flags.writeable = False
    return SphereGrid(n_theta=n_theta, n_phi=n_phi, theta=theta, phi=phi, weights=weights)


def _check_resolution(grid: SphereGrid, l_max: int) -> None:
    if grid.n_theta <= l_max or grid.n_phi <= 2 * l_max + 1:
        raise GridTooCoarse(
            f"{grid.n_theta} x {grid.n_phi} grid cannot resolve l_max = {l_max}: "
            f"need n_theta > {l_max} and n_phi > {2 * l_max + 1}"
        )


@lru_cache(maxsize=16)
def _basis_on_grid(n_theta: int, n_phi: int, l_max: int):
    """Y_lm, d_theta Y_lm and m for every basis state, on the grid mesh."""
    grid = sphere_grid(n_theta, n_phi)
    theta, phi = grid.mesh()
    labels = basis_labels(l_max)
    values = np.stack([spherical_harmonic(i.l, i.m, theta, phi) for i in labels])
    d_theta = np.stack([harmonic_theta_derivative(i.l, i.m, theta, phi) for i in labels])
    m = np.array([i.m for i in labels], dtype=float)
    for arr in (values, d_theta, m):
        arr.flags.writeable = False
    logger.debug("basis on %dx%d grid for l_max=%d: %d states", n_theta, n_phi, l_max, len(labels))
    return values, d_theta, m


def analyze(grid: SphereGrid, samples, l_max: int) -> np.ndarray:
    """Harmonic coefficients <Y_lm|f> of grid samples, in flattened order."""
    _check_resolution(grid, l_max)
    samples = np.asarray(samples)
    if samples.shape != grid.shape:
        raise ValueError(f"samples have shape {samples.shape}, grid is {grid.shape}")
    values, _, _ = _basis_on_grid(grid.n_theta, grid.n_phi, l_max)
    return np.einsum("nij,ij->n", np.conj(values), grid.weights * samples)


def synthesize(grid: SphereGrid, coefficients) -> np.ndarray:
    coefficients = np.asarray(coefficients)
    l_max = int(round(np.sqrt(coefficients.size))) - 1
    if basis_size(l_max) != coefficients.size:
        raise ValueError(f"{coefficients.size} coefficients is not a full basis (l_max+1)^2")
    values, _, _ = _basis_on_grid(grid.n_theta, grid.n_phi, l_max)
    return np.tensordot(coefficients, values, axes=1)


def _spectral_derivatives(grid: SphereGrid, samples, l_max: int):
    coefficients = analyze(grid, samples, l_max)
    values, d_theta, m = _basis_on_grid(grid.n_theta, grid.n_phi, l_max)
    f = np.tensordot(coefficients, values, axes=1)
    f_theta = np.tensordot(coefficients, d_theta, axes=1)
    f_phi = np.tensordot(1j * m * coefficients, values, axes=1)
    return f, f_theta, f_phi


# --- pointwise operators ---------------------------------------------------


def apply_pointwise(op_id: str, f, f_theta, f_phi, theta, phi, hbar: float | None = None):
    """A first-order generator applied to f given its angular derivatives."""
    hbar = settings.HBAR if hbar is None else hbar
    _check_op(op_id)
    if op_id not in FIRST_ORDER_OPERATORS:
        raise ValueError(f"{op_id} is second order; use apply_operator")
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    if op_id == "px":
        return -1j * hbar * (ct * cp * f_theta - sp / st * f_phi - st * cp * f)
    if op_id == "py":
        return -1j * hbar * (ct * sp * f_theta + cp / st * f_phi - st * sp * f)
    if op_id == "pz":
        return 1j * hbar * (st * f_theta + ct * f)
    if op_id == "Lx":
        return 1j * hbar * (sp * f_theta + ct / st * cp * f_phi)
    if op_id == "Ly":
        return -1j * hbar * (cp * f_theta - ct / st * sp * f_phi)
    return -1j * hbar * f_phi


def apply_operator(
    op_id: str, samples, grid: SphereGrid, l_max: int | None = None, hbar: float | None = None
) -> np.ndarray:
    """Op f on the grid, with derivatives from a harmonic-transform round trip.

    *samples* must be band limited to *l_max* (default: the largest degree
    the grid resolves). L2 is applied as the sum of L_i(L_i f).
    """
    _check_op(op_id)
    l_max = grid.max_degree() if l_max is None else l_max
    theta, phi = grid.mesh()
    f, f_theta, f_phi = _spectral_derivatives(grid, samples, l_max)
    if op_id != "L2":
        return apply_pointwise(op_id, f, f_theta, f_phi, theta, phi, hbar)
    total = np.zeros(grid.shape, dtype=complex)
    for component in ("Lx", "Ly", "Lz"):
        once = apply_pointwise(component, f, f_theta, f_phi, theta, phi, hbar)
        g, g_theta, g_phi = _spectral_derivatives(grid, once, l_max)
        total += apply_pointwise(component, g, g_theta, g_phi, theta, phi, hbar)
    return total


def _ladder_terms(op_id: str, l: int, m: int, hbar: float):  # noqa: E741
    """L_op Y_lm as a list of (coefficient, m') over Y_{l m'}."""
    if op_id == "Lz":
        return [(m * hbar, m)]
    up = hbar * np.sqrt(l * (l + 1) - m * (m + 1))
    down = hbar * np.sqrt(l * (l + 1) - m * (m - 1))
    if op_id == "Lx":
        terms = [(0.5 * up, m + 1), (0.5 * down, m - 1)]
    else:
        terms = [(-0.5j * up, m + 1), (0.5j * down, m - 1)]
    return [(c, mp) for c, mp in terms if abs(mp) <= l]


def apply_to_harmonic(op_id: str, l: int, m: int, theta, phi, hbar: float | None = None):  # noqa: E741
    """Op Y_lm at (theta, phi) from the analytic derivatives of Y_lm."""
    hbar = settings.HBAR if hbar is None else hbar
    _check_op(op_id)
    check_index(l, m)

    def first_order(op, mm):
        y = spherical_harmonic(l, mm, theta, phi)
        return apply_pointwise(
            op, y, harmonic_theta_derivative(l, mm, theta, phi), 1j * mm * y, theta, phi, hbar
        )

    if op_id != "L2":
        return first_order(op_id, m)
    total = 0
    for component in ("Lx", "Ly", "Lz"):
        for coefficient, mp in _ladder_terms(component, l, m, hbar):
            total = total + coefficient * first_order(component, mp)
    return total


# --- matrices --------------------------------------------------------------


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix elements <Y_l'm'|Op|Y_lm> for l, l' <= l_max.

    ``op_id`` is one of :data:`OPERATOR_IDS`, or a derived label for rotated
    operators.
    """

    op_id: str
    l_max: int
    entries: np.ndarray = field(repr=False)
    hbar: float = 1.0

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    def element(self, l1: int, m1: int, l2: int, m2: int) -> complex:
        """<Y_{l1 m1}|Op|Y_{l2 m2}>; both indices must lie in the truncated basis."""
        check_index(l1, m1)
        check_index(l2, m2)
        if max(l1, l2) > self.l_max:
            raise InvalidIndex(f"l must be <= l_max={self.l_max}, got l={max(l1, l2)}")
        return complex(self.entries[l1 * l1 + l1 + m1, l2 * l2 + l2 + m2])

    def interior(self, l_interior: int) -> np.ndarray:
        n = basis_size(l_interior)
        return self.entries[:n, :n]

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


@lru_cache(maxsize=64)
def _matrix_entries(op_id: str, l_max: int, hbar: float, n_theta: int, n_phi: int) -> np.ndarray:
    grid = sphere_grid(n_theta, n_phi)
    _check_resolution(grid, l_max + 1)
    values, d_theta, m = _basis_on_grid(n_theta, n_phi, l_max)
    theta, phi = grid.mesh()
    f_phi = 1j * m[:, None, None] * values
    applied = apply_pointwise(op_id, values, d_theta, f_phi, theta, phi, hbar)
    weighted = np.conj(values) * grid.weights
    entries = np.einsum("aij,bij->ab", weighted, applied)
    entries.flags.writeable = False
    return entries


def operator_matrix(
    op_id: str,
    l_max: int,
    hbar: float | None = None,
    n_theta: int | None = None,
    n_phi: int | None = None,
) -> OperatorMatrix:
    """Quadrature matrix of a generator on a (2 l_max + 4) x (4 l_max + 4) grid."""
    hbar = settings.HBAR if hbar is None else float(hbar)
    _check_op(op_id)
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    n_theta = 2 * l_max + 4 if n_theta is None else n_theta
    n_phi = 4 * l_max + 4 if n_phi is None else n_phi
    if op_id == "L2":
        components = [operator_matrix(c, l_max, hbar, n_theta, n_phi).entries for c in ("Lx", "Ly", "Lz")]
        entries = sum(c @ c for c in components)
    else:
        entries = _matrix_entries(op_id, l_max, hbar, n_theta, n_phi)
    return OperatorMatrix(op_id=op_id, l_max=l_max, entries=entries, hbar=hbar)


# --- dynamical algebra -----------------------------------------------------

# (A, B, expected) with [A, B] = i hbar * sum(coefficient * op).
ALGEBRA_RELATIONS: list[tuple[str, str, dict[str, float]]] = [
    ("px", "py", {"Lz": -1.0}),
    ("py", "pz", {"Lx": -1.0}),
    ("pz", "px", {"Ly": -1.0}),
    ("Lx", "py", {"pz": 1.0}),
    ("Ly", "pz", {"px": 1.0}),
    ("Lz", "px", {"py": 1.0}),
    ("Lx", "pz", {"py": -1.0}),
    ("Ly", "px", {"pz": -1.0}),
    ("Lz", "py", {"px": -1.0}),
    ("Lx", "Ly", {"Lz": 1.0}),
    ("Ly", "Lz", {"Lx": 1.0}),
    ("Lz", "Lx", {"Ly": 1.0}),
    ("px", "Lx", {}),
    ("py", "Ly", {}),
    ("pz", "Lz", {}),
]


def relation_label(a: str, b: str, expected: dict[str, float]) -> str:
    if not expected:
        return f"[{a},{b}] = 0"
    terms = []
    for op, coefficient in expected.items():
        sign = "-" if coefficient < 0 else ""
        scale = "" if abs(coefficient) == 1 else f"{abs(coefficient):g}*"
        terms.append(f"{sign}{scale}i*hbar*{op}")
    return f"[{a},{b}] = " + " + ".join(terms)


def _check_interior(l_max: int, l_interior: int) -> None:
    if l_interior < 0 or l_interior > l_max - 2:
        raise TruncationTooTight(
            f"interior l <= {l_interior} needs l_max >= {l_interior + 2}, got {l_max}"
        )


def commutator_residual(
    a: str,
    b: str,
    expected: dict[str, float],
    l_max: int,
    l_interior: int,
    hbar: float | None = None,
) -> float:
    """Max-norm of [A, B] - i hbar sum(c_k O_k) on the block l <= l_interior."""
    hbar = settings.HBAR if hbar is None else hbar
    _check_interior(l_max, l_interior)
    ma = operator_matrix(a, l_max, hbar).entries
    mb = operator_matrix(b, l_max, hbar).entries
    diff = ma @ mb - mb @ ma
    for op, coefficient in expected.items():
        diff = diff - 1j * hbar * coefficient * operator_matrix(op, l_max, hbar).entries
    n = basis_size(l_interior)
    return float(np.max(np.abs(diff[:n, :n])))


def rotated_operator(
    f: OperatorMatrix, generator: OperatorMatrix, angle: float, hbar: float | None = None
) -> OperatorMatrix:
    """exp(-i angle G / hbar) F exp(i angle G / hbar)."""
    hbar = f.hbar if hbar is None else hbar
    if angle == 0:
        return f
    u = expm(-1j * angle * generator.entries / hbar)
    entries = u @ f.entries @ u.conj().T
    label = f"rot({generator.op_id},{angle:.6g})[{f.op_id}]"
    return OperatorMatrix(op_id=label, l_max=f.l_max, entries=entries, hbar=f.hbar)


def rotation_equivalence_residual(
    family: str,
    axis: str,
    l_max: int,
    l_interior: int,
    hbar: float | None = None,
    angle: float | None = None,
) -> float:
    """Interior max-norm of rotate(f_z) - f_axis.

    ``axis="x"`` rotates by pi/2 about y, ``axis="y"`` by -pi/2 about x.
    Passing ``angle=0`` compares f_z with itself.
    """
    hbar = settings.HBAR if hbar is None else hbar
    if family not in ("p", "L"):
        raise ValueError(f"family must be 'p' or 'L', got {family!r}")
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    _check_interior(l_max, l_interior)
    source = operator_matrix(f"{family}z", l_max, hbar)
    if axis == "x":
        generator, default_angle = operator_matrix("Ly", l_max, hbar), 0.5 * np.pi
    else:
        generator, default_angle = operator_matrix("Lx", l_max, hbar), -0.5 * np.pi
    if angle is None:
        target = operator_matrix(f"{family}{axis}", l_max, hbar)
        angle = default_angle
    else:
        target = source if angle == 0 else operator_matrix(f"{family}{axis}", l_max, hbar)
    rotated = rotated_operator(source, generator, angle, hbar)
    return float(np.max(np.abs(rotated.interior(l_interior) - target.interior(l_interior))))


def verify_algebra(
    l_max: int | None = None, l_interior: int | None = None, hbar: float | None = None
) -> list[dict]:
    """Residuals of every commutation relation, the rotation equivalences
    and the hermiticity of all generators."""
    l_max = settings.LMAX if l_max is None else l_max
    l_interior = l_max - 2 if l_interior is None else l_interior
    hbar = settings.HBAR if hbar is None else hbar
    checks = []
    for a, b, expected in ALGEBRA_RELATIONS:
        residual = commutator_residual(a, b, expected, l_max, l_interior, hbar)
        checks.append(
            {
                "check": relation_label(a, b, expected),
                "residual": residual,
                "threshold": COMMUTATOR_TOLERANCE * hbar**2,
            }
        )
    for family in ("p", "L"):
        for axis in ("x", "y"):
            residual = rotation_equivalence_residual(family, axis, l_max, l_interior, hbar)
            checks.append(
                {
                    "check": f"rotate {family}z -> {family}{axis}",
                    "residual": residual,
                    "threshold": ROTATION_TOLERANCE * hbar,
                }
            )
    for op_id in FIRST_ORDER_OPERATORS:
        checks.append(
            {
                "check": f"hermitian {op_id}",
                "residual": operator_matrix(op_id, l_max, hbar).hermitian_residual(),
                "threshold": HERMITIAN_TOLERANCE * hbar,
            }
        )
    logger.debug("verify_algebra l_max=%d interior=%d: %d checks", l_max, l_interior, len(checks))
    return checks


# --- (p_z, L_z) eigenfunctions ---------------------------------------------


@dataclass(frozen=True)
class PzEigenfunction:
    """psi_{p,m} = e^{-i (p/hbar) ln tan(theta/2)} e^{i m phi} / (2 pi sqrt(hbar) sin(theta))."""

    p: float
    m: int
    hbar: float = 1.0

    @property
    def k(self) -> float:
        return self.p / self.hbar

    def __call__(self, theta, phi):
        u = theta_to_u(theta)
        phi = np.asarray(phi, dtype=float)
        return (
            np.exp(-1j * self.k * u + 1j * self.m * phi)
            / (2 * np.pi * np.sqrt(self.hbar) * np.sin(theta))
        )

    def theta_derivative(self, theta, phi):
        return self(theta, phi) * (-1j * self.k - np.cos(theta)) / np.sin(theta)

    def phi_derivative(self, theta, phi):
        return 1j * self.m * self(theta, phi)


def pz_eigenfunction(p: float, m: int, hbar: float | None = None) -> PzEigenfunction:
    hbar = settings.HBAR if hbar is None else hbar
    if int(m) != m:
        raise ValueError(f"m must be an integer, got {m!r}")
    return PzEigenfunction(p=float(p), m=int(m), hbar=float(hbar))


def _finite_difference_theta(psi: PzEigenfunction, theta, phi, h: float = 1e-4):
    theta = np.asarray(theta, dtype=float)
    if np.any(theta - 2 * h <= 0) or np.any(theta + 2 * h >= np.pi):
        raise PoleSingularity("finite-difference stencil reaches a pole")
    return (
        -psi(theta + 2 * h, phi)
        + 8 * psi(theta + h, phi)
        - 8 * psi(theta - h, phi)
        + psi(theta - 2 * h, phi)
    ) / (12 * h)


def pz_eigen_residual(
    p: float,
    m: int,
    theta,
    phi,
    hbar: float | None = None,
    method: str = "analytic",
) -> float:
    """Max of |p_z psi - p psi| / ((|p| + hbar) |psi|) over the given points."""
    psi = pz_eigenfunction(p, m, hbar)
    f = psi(theta, phi)
    if method == "analytic":
        f_theta = psi.theta_derivative(theta, phi)
    elif method == "finite_difference":
        f_theta = _finite_difference_theta(psi, theta, phi)
    else:
        raise ValueError(f"unknown method {method!r}")
    applied = apply_pointwise("pz", f, f_theta, psi.phi_derivative(theta, phi), theta, phi, psi.hbar)
    scale = (abs(psi.p) + psi.hbar) * np.abs(f)
    return float(np.max(np.abs(applied - psi.p * f) / scale))


def windowed_overlap(
    p1: float, p2: float, m1: int, m2: int, U: float, hbar: float | None = None
) -> complex:
    """<psi_{p1,m1}|psi_{p2,m2}> over the band u in [-U, U] of the sphere.

    The surface element is sin(theta)^2 du dphi. For m1 = m2 the exact value
    is sin((p1 - p2) U / hbar) / (pi (p1 - p2)), peaking at U / (pi hbar).
    """
    hbar = settings.HBAR if hbar is None else hbar
    if not U > 0:
        raise ValueError(f"window half-width must be > 0, got {U}")
    psi1 = pz_eigenfunction(p1, m1, hbar)
    psi2 = pz_eigenfunction(p2, m2, hbar)
    u, wu = composite_gauss_legendre(-U, U, panel_width_for(abs(p1 - p2) / hbar))
    n_phi = 2 * abs(m1 - m2) + 8
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    theta = u_to_theta(u)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    integrand = np.conj(psi1(tt, pp)) * psi2(tt, pp) * np.sin(tt) ** 2
    return complex(np.sum(wu[:, None] * integrand) * 2 * np.pi / n_phi)


def dirichlet_peak_slope(U_values, hbar: float | None = None, p: float = 0.0) -> float:
    """Slope of the diagonal windowed overlap against U; exact value 1/(pi hbar)."""
    U_values = np.asarray(U_values, dtype=float)
    peaks = [windowed_overlap(p, p, 0, 0, U, hbar).real for U in U_values]
    return float(np.polyfit(U_values, peaks, 1)[0])
