import numpy as np
import pytest
from numpy.testing import assert_allclose

from geomomentum.exceptions import InvalidIndex, PoleHit
from geomomentum.momentum_rep.closed_form import (
    CLOSED_FORMS,
    closed_form_available,
    difference_residual,
    phase_alignment,
    q_lm_closed,
)
from geomomentum.momentum_rep.quadrature import q_lm_numeric_table

K = np.linspace(-6.0, 6.0, 121)


class TestClosedForms:
    def test_ground_state(self):
        assert q_lm_closed(0, 0, 0.0) == pytest.approx(np.sqrt(np.pi) / 2)
        assert abs(q_lm_closed(0, 0, 0.0)) ** 2 == pytest.approx(np.pi / 4)

    def test_q10(self):
        k = 0.8
        expected = -0.5j * np.sqrt(3 * np.pi) * k / np.cosh(np.pi * k / 2)
        assert q_lm_closed(1, 0, k) == pytest.approx(expected, abs=1e-15)

    def test_csch_removable_at_zero(self):
        value = q_lm_closed(1, 1, 0.0)
        assert value == pytest.approx(0.5 * np.sqrt(1.5 * np.pi) * 2 / np.pi, rel=1e-14)
        near = q_lm_closed(1, 1, 1e-7)
        assert near == pytest.approx(value, rel=1e-10)

    def test_q21_vanishes_at_zero(self):
        assert q_lm_closed(2, 1, 0.0) == 0

    def test_array_in_array_out(self):
        assert q_lm_closed(2, 2, K).shape == K.shape

    @pytest.mark.parametrize("l,m,z", [(0, 0, 1j), (0, 0, -3j), (1, 1, 2j), (2, -1, -4j)])
    def test_pole_hit(self, l, m, z):  # noqa: E741
        with pytest.raises(PoleHit):
            q_lm_closed(l, m, z)

    def test_complex_argument_off_pole(self):
        assert np.isfinite(q_lm_closed(1, 1, 0.5 + 2j))

    def test_no_closed_form_for_l3(self):
        assert not closed_form_available(3, 0)
        with pytest.raises(InvalidIndex):
            q_lm_closed(3, 0, 0.5)

    def test_invalid_index(self):
        with pytest.raises(InvalidIndex):
            q_lm_closed(1, 2, 0.5)

    def test_hbar_scaling(self):
        hbar = 0.5
        assert q_lm_closed(2, 0, 0.3, hbar=hbar) == pytest.approx(
            q_lm_closed(2, 0, 0.3 / hbar) / np.sqrt(hbar), rel=1e-14
        )


class TestAgainstQuadrature:
    def test_all_closed_forms_match(self):
        numeric = q_lm_numeric_table(list(CLOSED_FORMS), K)
        for row, (l, m) in zip(numeric, CLOSED_FORMS):  # noqa: E741
            closed = q_lm_closed(l, m, K)
            aligned = phase_alignment(closed, row) * closed
            assert np.max(np.abs(aligned - row)) <= 1e-8, (l, m)

    def test_phase_alignment(self):
        values = np.array([1.0, 2.0, -0.5])
        c = phase_alignment(values, -1j * values)
        assert c == pytest.approx(-1j)
        assert phase_alignment(np.zeros(3), values) == 1


class TestDifferenceEquation:
    @pytest.mark.parametrize("l,m", list(CLOSED_FORMS))
    def test_residual_vanishes(self, l, m):  # noqa: E741
        assert np.max(difference_residual(l, m, K)) <= 1e-10

    def test_scalar_at_removable_point(self):
        assert difference_residual(1, 1, 0.0) == 0.0

    def test_hbar(self):
        assert np.max(difference_residual(2, 2, K * 0.4, hbar=0.4)) <= 1e-10

    @pytest.mark.parametrize("l,m", list(CLOSED_FORMS))
    def test_shifted_amplitudes_satisfy_equation(self, l, m):  # noqa: E741
        k = np.array([-1.3, 0.4, 2.2])
        a = k * k + m * m - 1
        rhs = (
            0.5 * a * q_lm_closed(l, m, k)
            + 0.25 * (a - 2j * k) * q_lm_closed(l, m, k - 2j)
            + 0.25 * (a + 2j * k) * q_lm_closed(l, m, k + 2j)
        )
        assert_allclose(l * (l + 1) * q_lm_closed(l, m, k), rhs, atol=1e-12)
