import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import trapezoid

from geomomentum.momentum_rep.oscillator import (
    central_width,
    compare_ho,
    hermite_functions,
    ho_momentum_density,
    variance_matched_beta,
)
from geomomentum.momentum_rep.properties import MomentumGrid


class TestHermiteFunctions:
    def test_orthonormal(self):
        x = np.linspace(-12, 12, 4801)
        psi = hermite_functions(12, x)
        gram = trapezoid(psi[:, None, :] * psi[None, :, :], x, axis=2)
        assert_allclose(gram, np.eye(13), atol=1e-10)

    def test_ground_state(self):
        assert hermite_functions(0, 0.0)[0] == pytest.approx(np.pi**-0.25)

    def test_parity(self):
        x = np.linspace(0.1, 3, 5)
        psi_pos = hermite_functions(5, x)
        psi_neg = hermite_functions(5, -x)
        for n in range(6):
            assert_allclose(psi_neg[n], (-1) ** n * psi_pos[n], atol=1e-14)


class TestDensity:
    def test_variance_matched_ground_state(self):
        beta = variance_matched_beta(0, 0)
        assert beta == pytest.approx(np.sqrt(2 / 3))
        assert ho_momentum_density(0, 0.0, beta) == pytest.approx(np.sqrt(3 / (2 * np.pi)))
        assert float(ho_momentum_density(0, 0.0, beta)) == pytest.approx(0.6910, abs=1e-4)

    def test_second_moment(self):
        k = np.linspace(-20, 20, 8001)
        density = ho_momentum_density(3, k, 1.2)
        assert trapezoid(density, k) == pytest.approx(1.0, abs=1e-10)
        assert trapezoid(k * k * density, k) == pytest.approx(1.44 * 3.5, abs=1e-8)

    def test_invalid(self):
        with pytest.raises(ValueError):
            ho_momentum_density(-1, 0.0, 1.0)
        with pytest.raises(ValueError):
            ho_momentum_density(0, 0.0, 0.0)

    def test_central_width_of_uniform(self):
        k = np.linspace(-1, 1, 2001)
        assert central_width(k, np.full(k.size, 0.5)) == pytest.approx(1.98, abs=1e-6)


class TestCompareHo:
    def test_ground_state(self):
        result = compare_ho(0)
        assert result.n == 0
        assert result.sup_diff == pytest.approx(np.pi / 4 - np.sqrt(3 / (2 * np.pi)), abs=0.002)
        assert result.l1_diff <= 0.15

    def test_high_l_envelope(self):
        result = compare_ho(10)
        assert result.n == 10
        assert result.envelope_l1_diff <= 0.15
        assert result.width_ratio == pytest.approx(1.0, abs=0.1)

    def test_wrong_pairing_is_far(self):
        assert compare_ho(0, n=1).sup_diff >= 0.3

    def test_manual_beta(self):
        grid = MomentumGrid.uniform(10.0, 0.05)
        manual = compare_ho(0, matching="manual", beta=variance_matched_beta(0, 0), grid=grid)
        auto = compare_ho(0, grid=grid)
        assert manual.sup_diff == pytest.approx(auto.sup_diff)
        assert set(manual.as_dict()) == {
            "l",
            "n",
            "beta",
            "sup_diff",
            "l1_diff",
            "envelope_l1_diff",
            "width_ratio",
        }

    def test_manual_needs_beta(self):
        with pytest.raises(ValueError):
            compare_ho(0, matching="manual")

    def test_unknown_matching(self):
        with pytest.raises(ValueError):
            compare_ho(0, matching="peak")
