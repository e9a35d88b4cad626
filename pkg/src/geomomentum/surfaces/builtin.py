"""Built-in surfaces with closed-form derivatives and outward normals."""

from __future__ import annotations

import math

import numpy as np

from geomomentum.exceptions import NonpositiveRadius
from geomomentum.surfaces.base import SurfaceChart


def _require_positive(label: str, value: float) -> float:
    if not value > 0:
        raise NonpositiveRadius(f"{label} must be > 0, got {value}")
    return float(value)


class Sphere(SurfaceChart):
    """Sphere of radius r in (theta, phi); poles are coordinate singularities."""

    name = "sphere"
    periodic = (False, True)

    def __init__(self, r: float = 1.0):
        self.r = _require_positive("r", r)
        super().__init__(((0.0, math.pi), (0.0, 2 * math.pi)))

    def point(self, q1, q2):
        st, ct = math.sin(q1), math.cos(q1)
        sp, cp = math.sin(q2), math.cos(q2)
        return self.r * np.array([st * cp, st * sp, ct])

    def tangents(self, q1, q2):
        st, ct = math.sin(q1), math.cos(q1)
        sp, cp = math.sin(q2), math.cos(q2)
        r_theta = self.r * np.array([ct * cp, ct * sp, -st])
        r_phi = self.r * np.array([-st * sp, st * cp, 0.0])
        return r_theta, r_phi

    def second_derivatives(self, q1, q2):
        st, ct = math.sin(q1), math.cos(q1)
        sp, cp = math.sin(q2), math.cos(q2)
        r_tt = -self.r * np.array([st * cp, st * sp, ct])
        r_tp = self.r * np.array([-ct * sp, ct * cp, 0.0])
        r_pp = -self.r * np.array([st * cp, st * sp, 0.0])
        return r_tt, r_tp, r_pp

    def describe(self):
        return f"sphere:r={self.r:g}"


class Cylinder(SurfaceChart):
    """Circular cylinder of radius R in (phi, z)."""

    name = "cylinder"
    periodic = (True, False)

    def __init__(self, R: float = 1.0, height: float = 2.0):
        self.R = _require_positive("R", R)
        half = _require_positive("height", height) / 2
        super().__init__(((0.0, 2 * math.pi), (-half, half)))

    def point(self, q1, q2):
        return np.array([self.R * math.cos(q1), self.R * math.sin(q1), q2])

    def tangents(self, q1, q2):
        r_phi = np.array([-self.R * math.sin(q1), self.R * math.cos(q1), 0.0])
        r_z = np.array([0.0, 0.0, 1.0])
        return r_phi, r_z

    def second_derivatives(self, q1, q2):
        r_pp = np.array([-self.R * math.cos(q1), -self.R * math.sin(q1), 0.0])
        zero = np.zeros(3)
        return r_pp, zero, zero.copy()

    def describe(self):
        return f"cylinder:R={self.R:g}"


class Torus(SurfaceChart):
    """Torus with center-line radius R and tube radius a < R in (u, v).

    ``r = ((R + a cos v) cos u, (R + a cos v) sin u, a sin v)``; v = 0 is
    the outer equator.
    """

    name = "torus"
    periodic = (True, True)

    def __init__(self, R: float = 2.0, a: float = 0.5):
        self.R = _require_positive("R", R)
        self.a = _require_positive("a", a)
        if self.a >= self.R:
            raise ValueError(f"torus requires a < R, got R={R}, a={a}")
        super().__init__(((0.0, 2 * math.pi), (-math.pi, math.pi)))

    def point(self, q1, q2):
        rho = self.R + self.a * math.cos(q2)
        return np.array(
            [rho * math.cos(q1), rho * math.sin(q1), self.a * math.sin(q2)]
        )

    def tangents(self, q1, q2):
        su, cu = math.sin(q1), math.cos(q1)
        sv, cv = math.sin(q2), math.cos(q2)
        rho = self.R + self.a * cv
        r_u = np.array([-rho * su, rho * cu, 0.0])
        r_v = np.array([-self.a * sv * cu, -self.a * sv * su, self.a * cv])
        return r_u, r_v

    def second_derivatives(self, q1, q2):
        su, cu = math.sin(q1), math.cos(q1)
        sv, cv = math.sin(q2), math.cos(q2)
        rho = self.R + self.a * cv
        r_uu = np.array([-rho * cu, -rho * su, 0.0])
        r_uv = np.array([self.a * sv * su, -self.a * sv * cu, 0.0])
        r_vv = np.array([-self.a * cv * cu, -self.a * cv * su, -self.a * sv])
        return r_uu, r_uv, r_vv

    def describe(self):
        return f"torus:R={self.R:g},a={self.a:g}"


class Plane(SurfaceChart):
    """The plane z = 0 in Cartesian (x, y)."""

    name = "plane"

    def __init__(self, size: float = 2.0):
        half = _require_positive("size", size) / 2
        super().__init__(((-half, half), (-half, half)))

    def point(self, q1, q2):
        return np.array([q1, q2, 0.0])

    def tangents(self, q1, q2):
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])

    def second_derivatives(self, q1, q2):
        return np.zeros(3), np.zeros(3), np.zeros(3)


class Catenoid(SurfaceChart):
    """Catenoid of neck radius c in (u, v): a minimal surface, M = 0."""

    name = "catenoid"
    periodic = (True, False)

    def __init__(self, c: float = 1.0):
        self.c = _require_positive("c", c)
        super().__init__(((0.0, 2 * math.pi), (-self.c, self.c)))

    def point(self, q1, q2):
        rho = self.c * math.cosh(q2 / self.c)
        return np.array([rho * math.cos(q1), rho * math.sin(q1), q2])

    def tangents(self, q1, q2):
        su, cu = math.sin(q1), math.cos(q1)
        rho = self.c * math.cosh(q2 / self.c)
        sh = math.sinh(q2 / self.c)
        return np.array([-rho * su, rho * cu, 0.0]), np.array([sh * cu, sh * su, 1.0])

    def second_derivatives(self, q1, q2):
        su, cu = math.sin(q1), math.cos(q1)
        rho = self.c * math.cosh(q2 / self.c)
        sh = math.sinh(q2 / self.c)
        ch = math.cosh(q2 / self.c) / self.c
        r_uu = np.array([-rho * cu, -rho * su, 0.0])
        r_uv = np.array([-sh * su, sh * cu, 0.0])
        r_vv = np.array([ch * cu, ch * su, 0.0])
        return r_uu, r_uv, r_vv

    def describe(self):
        return f"catenoid:c={self.c:g}"
