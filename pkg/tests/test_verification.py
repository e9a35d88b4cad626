import pytest

from geomomentum.momentum_rep.properties import MomentumGrid
from geomomentum.results import KNOWN_SUITES, check_passed
from geomomentum.verification import (
    DEFAULT_SURFACES,
    SUITES,
    verify_geometry,
    verify_qlm,
    verify_surface,
)


def _failures(checks):
    return [c["check"] for c in checks if not check_passed(c)]


def test_suites_registry():
    assert set(SUITES) == {"algebra", "geometry", "qlm"}
    assert KNOWN_SUITES == tuple(sorted(SUITES))


def test_checks_have_schema():
    checks = verify_surface("plane", points=2)
    for check in checks:
        assert set(check) == {"check", "residual", "threshold"}
        assert isinstance(check["residual"], float)


def test_verify_qlm_small():
    checks = verify_qlm(l_max=2, grid=MomentumGrid.uniform(20.0, 0.05))
    assert _failures(checks) == []
    names = [c["check"] for c in checks]
    assert "oracle (2,-2)" in names
    assert "orthogonality m=0" in names
    assert "nodes (2,0)" in names


def test_verify_qlm_asymmetric_grid_skips_symmetry():
    grid = MomentumGrid.uniform(20.0, 0.05)
    shifted = MomentumGrid(grid.k_values + 0.01)
    checks = verify_qlm(l_max=1, grid=shifted)
    assert not any(c["check"].startswith("symmetry") for c in checks)


@pytest.mark.slow
def test_verify_qlm_full():
    assert _failures(verify_qlm(l_max=6)) == []


@pytest.mark.parametrize("spec", DEFAULT_SURFACES)
def test_verify_surface(spec):
    assert _failures(verify_surface(spec, points=4, seed=1)) == []


def test_verify_geometry_includes_sphere_momentum():
    checks = verify_geometry(("sphere",), points=2)
    assert _failures(checks) == []
    assert checks[-1]["check"].startswith("sphere geometric momentum")
