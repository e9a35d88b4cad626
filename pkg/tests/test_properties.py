import numpy as np
import pytest
from numpy.testing import assert_allclose

from geomomentum.momentum_rep.properties import (
    MomentumGrid,
    amplitude_table,
    count_sign_changes,
    distribution,
    momentum_parity,
    node_count,
    normalization_integral,
    orthogonality_matrix,
    polynomial_structure_check,
    real_amplitude,
    second_moment,
    symmetry_residuals,
    trapezoid_weights,
)

FAST_GRID = MomentumGrid.uniform(20.0, 0.05)


# --- Grids ---


class TestMomentumGrid:
    def test_uniform(self):
        grid = MomentumGrid.uniform(1.0, 0.5)
        assert_allclose(grid.k_values, [-1.0, -0.5, 0.0, 0.5, 1.0])
        assert grid.symmetric
        assert len(grid) == 5

    def test_describe(self):
        assert MomentumGrid.uniform(2.0, 0.5).describe() == {
            "kmin": -2.0,
            "kmax": 2.0,
            "points": 9,
            "symmetric": True,
        }

    @pytest.mark.parametrize("k", [[0.0], [0.0, 0.0, 1.0], [1.0, 0.5]])
    def test_invalid(self, k):
        with pytest.raises(ValueError):
            MomentumGrid(np.array(k))

    def test_false_symmetry_flag(self):
        with pytest.raises(ValueError):
            MomentumGrid(np.array([-1.0, 0.0, 2.0]), symmetric=True)

    def test_bad_uniform(self):
        with pytest.raises(ValueError):
            MomentumGrid.uniform(0.0, 0.1)

    def test_settings_defaults(self, monkeypatch):
        from geomomentum import settings

        monkeypatch.setattr(settings, "KMAX", 2.0)
        monkeypatch.setattr(settings, "KSTEP", 1.0)
        assert len(MomentumGrid.uniform()) == 5

    def test_trapezoid_weights(self):
        assert_allclose(trapezoid_weights(np.array([0.0, 1.0, 3.0])), [0.5, 1.5, 1.0])


# --- Amplitude tables ---


class TestAmplitudeTable:
    def test_ground_state_density_at_zero(self):
        table = amplitude_table(0, 0, MomentumGrid.uniform(2.0, 0.5))
        assert table.density[4] == pytest.approx(np.pi / 4)
        assert table.source == "closed_form"

    def test_source_selection(self):
        grid = MomentumGrid.uniform(1.0, 0.5)
        assert amplitude_table(3, 0, grid).source == "quadrature"
        forced = amplitude_table(2, 1, grid, source="quadrature")
        assert forced.source == "quadrature"
        closed = amplitude_table(2, 1, grid)
        assert_allclose(np.abs(forced.values), np.abs(closed.values), atol=1e-10)

    def test_unknown_source(self):
        with pytest.raises(ValueError):
            amplitude_table(0, 0, MomentumGrid.uniform(1.0, 0.5), source="series")

    def test_distribution_columns(self):
        grid = MomentumGrid.uniform(1.0, 0.25)
        dist = distribution(1, 0, grid)
        assert dist.shape == (9, 2)
        assert_allclose(dist[:, 0], grid.k_values)
        assert dist[4, 1] == 0.0

    def test_real_amplitude(self):
        grid = MomentumGrid.uniform(2.0, 0.5)
        for l, m in [(1, 0), (2, 1), (2, 2), (3, 0)]:  # noqa: E741
            values = amplitude_table(l, m, grid, source="quadrature").values
            rotated = values * (-1j) ** ((l + m) % 2)
            assert np.max(np.abs(rotated.imag)) < 1e-12
            assert_allclose(real_amplitude(l, m, values), rotated.real)


# --- Properties ---


class TestProperties:
    @pytest.mark.parametrize("l,m", [(0, 0), (1, 1), (2, -1), (3, 2), (5, 0)])
    def test_normalization(self, l, m):  # noqa: E741
        assert normalization_integral(l, m, FAST_GRID) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.slow
    def test_normalization_sweep(self):
        grid = MomentumGrid.uniform(20.0, 0.02)
        for l in range(7):  # noqa: E741
            for m in range(-l, l + 1):
                assert normalization_integral(l, m, grid) == pytest.approx(1.0, abs=1e-6)

    def test_normalization_with_hbar(self):
        hbar = 0.5
        grid = MomentumGrid.uniform(20.0 * hbar, 0.05 * hbar)
        assert normalization_integral(2, 1, grid, hbar=hbar) == pytest.approx(1.0, abs=1e-6)

    def test_symmetries(self):
        res = symmetry_residuals(3, 1, MomentumGrid.uniform(5.0, 0.1))
        assert res["m_reflection"] < 1e-10
        assert res["k_reflection"] < 1e-10

    def test_symmetry_needs_symmetric_grid(self):
        with pytest.raises(ValueError):
            symmetry_residuals(1, 0, MomentumGrid(np.array([0.0, 1.0])))

    def test_parity(self):
        assert momentum_parity(0, 0) == 1
        assert momentum_parity(1, 0) == -1
        assert momentum_parity(3, -1) == 1

    @pytest.mark.parametrize("m,nodes", [(0, 3), (1, 2), (2, 1), (3, 0), (-2, 1)])
    def test_node_count(self, m, nodes):
        assert node_count(3, m, MomentumGrid.uniform(10.0, 0.05)) == nodes

    def test_count_sign_changes_ignores_noise(self):
        assert count_sign_changes(np.array([1.0, -1.0, 1e-12, -1e-12, 1.0])) == 2

    def test_orthogonality(self):
        gram = orthogonality_matrix(0, 3, FAST_GRID)
        assert_allclose(gram, np.eye(4), atol=1e-6)
        gram = orthogonality_matrix(-2, 4, FAST_GRID)
        assert gram.shape == (3, 3)
        assert_allclose(gram, np.eye(3), atol=1e-6)

    def test_orthogonality_empty(self):
        with pytest.raises(ValueError):
            orthogonality_matrix(3, 2, FAST_GRID)

    @pytest.mark.parametrize(
        "l,m,degree,parity", [(0, 0, 0, 1), (1, 1, 1, -1), (2, 0, 2, 1), (2, 1, 2, 1), (3, 0, 3, -1)]
    )
    def test_polynomial_structure(self, l, m, degree, parity):  # noqa: E741
        fit = polynomial_structure_check(l, m)
        assert fit.degree == degree
        assert fit.parity == parity
        assert fit.residual < 1e-7

    def test_q20_polynomial_shape(self):
        coef = polynomial_structure_check(2, 0).coefficients
        # 3k^2 - 1 up to the overall constant
        assert coef[2] / coef[0] == pytest.approx(-3.0, rel=1e-6)

    def test_second_moments(self):
        assert second_moment(0, 0, FAST_GRID) == pytest.approx(1 / 3, abs=1e-6)
        assert second_moment(1, 0, FAST_GRID) == pytest.approx(1.4, abs=1e-6)
