import math

import pytest

from geomomentum.exceptions import InvalidIndex, NonpositiveRadius
from geomomentum.momentum_rep.properties import MomentumGrid, second_moment
from geomomentum.momentum_rep.uncertainty import (
    analytic_second_moment,
    momentum_uncertainty_au,
    position_variance,
    uncertainty_product,
)


class TestSecondMoment:
    def test_values(self):
        assert analytic_second_moment(0, 0) == pytest.approx(1 / 3)
        assert analytic_second_moment(1, 0) == pytest.approx(1.4)
        assert analytic_second_moment(1, 1) == pytest.approx(4 * 3 / 15)

    def test_symmetric_in_m(self):
        assert analytic_second_moment(4, -3) == analytic_second_moment(4, 3)

    @pytest.mark.parametrize("l,m", [(2, 1), (3, 0), (4, -2)])
    def test_matches_numeric(self, l, m):  # noqa: E741
        grid = MomentumGrid.uniform(25.0, 0.05)
        assert second_moment(l, m, grid) == pytest.approx(analytic_second_moment(l, m), abs=1e-6)

    def test_invalid(self):
        with pytest.raises(InvalidIndex):
            analytic_second_moment(1, 2)


class TestMomentumUncertainty:
    def test_one_angstrom(self):
        assert momentum_uncertainty_au(1.0) == pytest.approx(0.3055, abs=5e-5)

    def test_fullerene_radius(self):
        assert momentum_uncertainty_au(5.0) == pytest.approx(0.0611, abs=5e-5)

    def test_infinite_radius(self):
        assert momentum_uncertainty_au(math.inf) == 0.0

    @pytest.mark.parametrize("r", [0.0, -1.0])
    def test_nonpositive(self, r):
        with pytest.raises(NonpositiveRadius):
            momentum_uncertainty_au(r)


class TestUncertaintyProduct:
    def test_ground_state_saturates(self):
        report = uncertainty_product(0, 0)
        assert report.product == pytest.approx(1 / 3, abs=1e-12)
        assert report.robertson_bound == pytest.approx(1 / 3, abs=1e-12)

    def test_position_variance(self):
        assert position_variance(0, 0) == pytest.approx(1 / 3, abs=1e-12)
        assert position_variance(1, 0) == pytest.approx(3 / 5, abs=1e-12)

    @pytest.mark.parametrize("l,m", [(1, 0), (1, 1), (2, 0), (3, -2), (6, 1)])
    def test_bound_holds(self, l, m):  # noqa: E741
        report = uncertainty_product(l, m)
        assert report.product >= report.robertson_bound - 1e-12
        assert set(report.as_dict()) == {"delta_z", "delta_k", "product", "robertson_bound"}
