import math

import numpy as np
import pytest

from geomomentum.exceptions import GeomomentumError, NonpositiveRadius, UnknownChart
from geomomentum.surfaces.base import FunctionChart
from geomomentum.surfaces.builtin import Cylinder, Plane, Sphere, Torus
from geomomentum.surfaces.registry import capabilities, parse_surface, surface_names


class TestParseSurface:
    def test_defaults(self):
        chart = parse_surface("sphere")
        assert isinstance(chart, Sphere)
        assert chart.r == 1.0

    def test_parameters(self):
        chart = parse_surface("torus:R=3,a=1")
        assert isinstance(chart, Torus)
        assert chart.describe() == "torus:R=3,a=1"

    def test_whitespace_tolerated(self):
        chart = parse_surface(" cylinder:R = 2 , height=4 ")
        assert isinstance(chart, Cylinder)
        assert chart.R == 2.0
        assert chart.domain[1] == (-2.0, 2.0)

    @pytest.mark.parametrize(
        "spec",
        ["cube", "", "sphere:x=1", "sphere:r", "sphere:r=abc", "torus:R=1,a=2"],
    )
    def test_unknown_chart(self, spec):
        with pytest.raises(UnknownChart):
            parse_surface(spec)

    def test_nonpositive_radius_kept(self):
        with pytest.raises(NonpositiveRadius):
            parse_surface("sphere:r=-1")

    def test_errors_share_base(self):
        with pytest.raises(GeomomentumError) as excinfo:
            parse_surface("cube")
        assert excinfo.value.to_payload()["error"] == "unknown_chart"


class TestCapabilities:
    def test_all_surfaces_listed(self):
        caps = capabilities()
        assert list(caps) == surface_names()
        assert set(caps) == {"sphere", "cylinder", "torus", "plane", "catenoid"}

    def test_parameters_and_defaults(self):
        caps = capabilities()
        assert caps["sphere"]["parameters"] == {"r": 1.0}
        assert caps["torus"]["parameters"] == {"R": 2.0, "a": 0.5}
        assert caps["cylinder"]["closed_form_derivatives"] is True

    def test_broken_entry_reported(self, monkeypatch):
        from geomomentum.surfaces import registry

        monkeypatch.setitem(registry.SURFACES, "ghost", ("geomomentum.surfaces.builtin", "Ghost"))
        caps = capabilities()
        assert "error" in caps["ghost"]
        assert "parameters" in caps["sphere"]


class TestCharts:
    def test_sphere_point_on_sphere(self):
        chart = Sphere(2.0)
        assert np.linalg.norm(chart.point(0.4, 1.1)) == pytest.approx(2.0)

    def test_periodic_contains(self):
        chart = Torus()
        assert chart.contains(7.0, -4.0)
        assert not chart.contains(float("nan"), 0.0)

    def test_sphere_poles_excluded(self):
        chart = Sphere()
        assert not chart.contains(0.0, 1.0)
        assert not chart.contains(math.pi, 1.0)
        assert chart.contains(1.0, 9.0)

    def test_plane_bounds(self):
        chart = Plane(2.0)
        assert chart.contains(0.5, -0.5)
        assert not chart.contains(1.0, 0.0)

    def test_interior_points_reproducible(self):
        chart = Torus()
        assert chart.interior_points(5, seed=3) == chart.interior_points(5, seed=3)
        for q1, q2 in chart.interior_points(50, seed=1, margin=0.1):
            assert 0.1 * 2 * math.pi <= q1 <= 0.9 * 2 * math.pi

    def test_function_chart_matches_closed_form_tangents(self):
        torus = Torus()
        chart = FunctionChart(torus.point, torus.domain, name="numeric torus")
        for a, b in zip(chart.tangents(0.7, 0.4), torus.tangents(0.7, 0.4)):
            np.testing.assert_allclose(a, b, atol=1e-8)
        assert chart.describe() == "numeric torus"

    def test_empty_domain(self):
        with pytest.raises(ValueError):
            FunctionChart(lambda u, v: (u, v, 0.0), ((1.0, 1.0), (0.0, 1.0)))
