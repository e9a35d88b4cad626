import math

import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st
from numpy.testing import assert_allclose

from geomomentum.exceptions import DegenerateChart, ShellFold
from geomomentum.legendre import spherical_harmonic
from geomomentum.surface_geometry import (
    brute_force_shell_metric,
    geometric_momentum,
    geometric_potential,
    geometric_potential_at,
    geometry_at,
    laplacian_limit_coefficient,
    normal_divergence,
    principal_curvatures,
    shell_det_closed_form,
    shell_metric,
    tangency_residual,
)
from geomomentum.surfaces.base import FIRST_DERIVATIVE_STEP, SECOND_DERIVATIVE_STEP, FunctionChart
from geomomentum.surfaces.builtin import Catenoid, Cylinder, Plane, Sphere, Torus
from geomomentum.verification import verify_sphere_momentum


def _plane_wave(q1, q2):
    return np.exp(1j * (0.7 * q1 - 0.3 * q2)) * (1.5 + np.cos(q1))


# --- Pointwise geometry ---


class TestCurvatures:
    def test_sphere_equator(self):
        geo = geometry_at(Sphere(), (math.pi / 2, 0.0))
        assert geo.M == pytest.approx(-1.0, abs=1e-14)
        assert geo.K == pytest.approx(1.0, abs=1e-14)
        assert_allclose(geo.n, [1.0, 0.0, 0.0], atol=1e-15)

    def test_sphere_radius_scaling(self):
        geo = geometry_at(Sphere(2.0), (1.0, 2.0))
        assert geo.M == pytest.approx(-0.5, abs=1e-14)
        assert geo.K == pytest.approx(0.25, abs=1e-14)

    def test_torus_outer_equator(self):
        geo = geometry_at(Torus(2.0, 0.5), (0.0, 0.0))
        assert geo.M == pytest.approx(-1.2, abs=1e-14)
        assert geo.K == pytest.approx(0.8, abs=1e-14)
        k1, k2 = principal_curvatures(geo)
        assert k1 == pytest.approx(0.4, abs=1e-14)
        assert k2 == pytest.approx(2.0, abs=1e-14)

    def test_plane_is_flat(self):
        geo = geometry_at(Plane(), (0.2, -0.4))
        assert geo.M == 0.0
        assert geo.K == 0.0
        assert geometric_potential_at(Plane(), (0.2, -0.4)) == 0.0

    def test_catenoid_is_minimal(self):
        geo = geometry_at(Catenoid(), (1.0, 0.3))
        assert geo.M == pytest.approx(0.0, abs=1e-13)
        assert geo.K < 0

    def test_monge_patch(self):
        def height(x, y):
            return 0.3 * x * x - 0.2 * x * y + 0.1 * y**3

        chart = FunctionChart(lambda x, y: (x, y, height(x, y)), ((-1, 1), (-1, 1)), name="monge")
        x, y = 0.2, -0.3
        fx, fy = 0.6 * x - 0.2 * y, -0.2 * x + 0.3 * y * y
        fxx, fxy, fyy = 0.6, -0.2, 0.6 * y
        w2 = 1 + fx * fx + fy * fy
        expected_k = (fxx * fyy - fxy * fxy) / w2**2
        expected_m = ((1 + fy * fy) * fxx - 2 * fx * fy * fxy + (1 + fx * fx) * fyy) / (
            2 * w2**1.5
        )
        geo = geometry_at(chart, (x, y))
        assert geo.K == pytest.approx(expected_k, abs=1e-5)
        assert geo.M == pytest.approx(expected_m, abs=1e-5)

    def test_numeric_torus_matches_closed_form(self):
        torus = Torus()
        chart = FunctionChart(torus.point, torus.domain)
        numeric = geometry_at(chart, (0.7, 0.4))
        closed = geometry_at(torus, (0.7, 0.4))
        assert numeric.M == pytest.approx(closed.M, abs=1e-6)
        assert numeric.K == pytest.approx(closed.K, abs=1e-6)

    def test_numeric_torus_normal_divergence(self):
        assert FIRST_DERIVATIVE_STEP == 1e-5
        assert SECOND_DERIVATIVE_STEP == 1e-4
        torus = Torus()
        chart = FunctionChart(torus.point, torus.domain)
        expected = normal_divergence(torus, (0.7, 0.4))
        assert normal_divergence(chart, (0.7, 0.4)) == pytest.approx(expected, rel=1e-6)

    def test_pole_is_degenerate(self):
        with pytest.raises(DegenerateChart):
            geometry_at(Sphere(), (0.0, 1.0))

    def test_collapsed_chart_is_degenerate(self):
        chart = FunctionChart(lambda u, v: (u, 0.0, 0.0), ((0, 1), (0, 1)))
        with pytest.raises(DegenerateChart):
            geometry_at(chart, (0.5, 0.5))


# --- Geometric potential ---


class TestGeometricPotential:
    def test_cylinder(self):
        v = geometric_potential_at(Cylinder(R=2.0), (0.3, 0.2))
        assert v == pytest.approx(-0.03125, abs=1e-14)

    def test_cylinder_scales_with_constants(self):
        assert geometric_potential(-0.25, 0.0, mu=2.0, hbar=3.0) == pytest.approx(-9 / 4 * 0.0625)

    def test_sphere_vanishes(self):
        geo = geometry_at(Sphere(3.0), (1.2, 0.5))
        assert geometric_potential(geo.M, geo.K) == pytest.approx(0.0, abs=1e-14)
        assert laplacian_limit_coefficient(geo.M, geo.K) == pytest.approx(0.0, abs=1e-14)

    @given(
        st.floats(min_value=0.0, max_value=2 * math.pi),
        st.floats(min_value=-3.0, max_value=3.0),
        st.floats(min_value=0.1, max_value=0.9),
    )
    @hsettings(max_examples=100, deadline=None)
    def test_never_positive(self, u, v, a):
        torus = Torus(1.0, a)
        geo = geometry_at(torus, (u, v))
        assert geometric_potential_at(torus, (u, v)) <= 0.0
        assert geometric_potential(geo.M, geo.K) <= 1e-12


# --- Thin shell ---


class TestShellMetric:
    def test_sphere_det(self):
        shell = shell_metric(Sphere(), (math.pi / 2, 0.3), 0.1)
        assert shell.detG == pytest.approx(1.4641, rel=1e-12)

    def test_cylinder_det(self):
        shell = shell_metric(Cylinder(), (1.0, 0.0), 0.05)
        assert shell.detG == pytest.approx(1.1025, rel=1e-12)
        assert shell_det_closed_form(Cylinder(), (1.0, 0.0), 0.05) == pytest.approx(1.1025)

    def test_normal_block(self):
        shell = shell_metric(Torus(), (0.5, 1.0), 0.05)
        assert shell.G[2, 2] == 1.0
        assert_allclose(shell.G[:2, 2], 0.0)
        assert_allclose(shell.G, shell.G.T, atol=1e-15)

    def test_fold(self):
        with pytest.raises(ShellFold):
            shell_metric(Sphere(), (1.0, 1.0), -1.0)

    @pytest.mark.parametrize("chart,q", [(Sphere(), (1.0, 2.0)), (Torus(), (0.3, 2.0)), (Catenoid(), (2.0, 0.4))])
    @pytest.mark.parametrize("q3", [-0.05, 0.0, 0.08])
    def test_brute_force(self, chart, q, q3):
        shell = shell_metric(chart, q, q3)
        assert_allclose(brute_force_shell_metric(chart, q, q3), shell.G, atol=1e-6)


# --- Normal field and momentum ---


class TestNormalAndMomentum:
    def test_normal_divergence_sphere(self):
        assert normal_divergence(Sphere(), (1.0, 2.0)) == pytest.approx(2.0, abs=1e-8)

    def test_normal_divergence_torus(self):
        torus = Torus()
        geo = geometry_at(torus, (0.8, 2.1))
        assert normal_divergence(torus, (0.8, 2.1)) == pytest.approx(-2 * geo.M, abs=1e-7)

    @pytest.mark.parametrize("chart,q", [(Sphere(), (1.2, 0.7)), (Torus(), (0.3, 2.0)), (Cylinder(), (1.0, 0.1))])
    def test_tangency(self, chart, q):
        assert tangency_residual(chart, _plane_wave, q) < 1e-6

    def test_momentum_of_constant_is_normal(self):
        chart = Sphere()
        p = geometric_momentum(chart, lambda a, b: 1.0, (1.0, 0.5))
        geo = geometry_at(chart, (1.0, 0.5))
        assert_allclose(p, 1j * geo.n, atol=1e-10)

    def test_sphere_harmonics_match_explicit_operators(self):
        check = verify_sphere_momentum(l_max=2, points=3)
        assert check["residual"] <= check["threshold"]

    def test_y10_momentum_hbar_scaling(self):
        chart = Sphere()

        def y10(theta, phi):
            return spherical_harmonic(1, 0, theta, phi)

        p1 = geometric_momentum(chart, y10, (0.9, 0.2), hbar=1.0)
        p2 = geometric_momentum(chart, y10, (0.9, 0.2), hbar=0.5)
        assert_allclose(p2, 0.5 * p1)
