import math

import numpy as np
import pytest

from squeezering import (
    ParameterError,
    PumpSpec,
    avg_insertion_loss_db,
    bandwidth,
    circulator_fidelity,
    gain_map,
    insertion_loss_db,
    isolation_db,
    mrs_params,
    nms_params,
)


class TestIsolation:
    def test_nms_value(self):
        assert isolation_db(0.830598931635, 2.5505024780e-9) == pytest.approx(85.1277, abs=1e-3)
        assert isolation_db(0.830598931635, 2.5505024780e-9) == pytest.approx(85.1, abs=0.3)

    def test_mrs_value(self):
        assert isolation_db(0.927933786086, 8.8171795474e-5) == pytest.approx(40.3, abs=0.3)

    def test_equal_channels_give_zero(self):
        for t in (1e-6, 0.3, 1.0):
            assert isolation_db(t, t) == 0.0

    def test_dark_backward_gives_sentinel(self):
        assert isolation_db(0.8, 0.0) == math.inf
        assert isolation_db(0.8, 1e-301) == math.inf

    def test_nonpositive_forward_errors(self):
        with pytest.raises(ParameterError):
            isolation_db(0.0, 1e-5)


class TestInsertionLoss:
    def test_values(self):
        assert insertion_loss_db(0.830598931635) == pytest.approx(0.80608632, abs=1e-6)
        assert insertion_loss_db(0.830598931635) == pytest.approx(0.80, abs=0.02)
        assert insertion_loss_db(0.927933786086) == pytest.approx(0.32, abs=0.02)
        assert insertion_loss_db(1.0) == 0.0

    def test_average(self):
        assert avg_insertion_loss_db(0.830598931635, 0.980001007499) == pytest.approx(0.43, abs=0.02)
        assert avg_insertion_loss_db(0.927933786086, 0.980081393455) == pytest.approx(0.20, abs=0.02)

    def test_domain_errors(self):
        with pytest.raises(ParameterError):
            insertion_loss_db(0.0)
        with pytest.raises(ParameterError):
            insertion_loss_db(1.2)
        with pytest.raises(ParameterError):
            avg_insertion_loss_db(0.5, -0.1)


class TestBandwidth:
    def test_nms_20db_window(self):
        res = bandwidth(nms_params(), 20.0, 0.0, 1.0)
        assert res.reached
        assert res.width == pytest.approx(0.856469, abs=1e-3)
        assert res.width == pytest.approx(0.86, abs=0.02)

    def test_mrs_20db_window(self):
        res = bandwidth(mrs_params(), 20.0, 2.62, 0.5)
        assert res.reached
        assert res.width == pytest.approx(0.206089, abs=1e-3)
        assert res.width == pytest.approx(0.21, abs=0.02)

    def test_threshold_above_maximum(self):
        res = bandwidth(nms_params(), 200.0, 0.0, 0.5)
        assert not res.reached
        assert res.width == 0.0

    def test_monotone_in_threshold(self):
        widths = [bandwidth(nms_params(), thr, 0.0, 1.0).width for thr in (15.0, 20.0, 30.0, 40.0)]
        assert all(w1 >= w2 for w1, w2 in zip(widths, widths[1:]))


class TestCirculatorFidelity:
    def test_nms_operating_point(self):
        rep = circulator_fidelity(0.830598931635, 2.5505024780e-9, 0.980001007499)
        assert rep.F >= 0.999

    def test_ideal_entries(self):
        assert circulator_fidelity(1.0, 0.0, 1.0).F == 1.0

    def test_half_split_row(self):
        for t in (1e-6, 0.05, 0.9):
            assert circulator_fidelity(0.9, t, t).F == pytest.approx(0.75)

    def test_row_scaling_invariance(self, rng):
        base = circulator_fidelity(0.8, 0.01, 0.95)
        for _ in range(20):
            c1, c2 = rng.uniform(0.05, 20.0, 2)
            scaled = circulator_fidelity(c1 * 0.8, c2 * 0.01, c2 * 0.95)
            assert scaled.F == pytest.approx(base.F, rel=1e-12)

    def test_zero_row_errors(self):
        with pytest.raises(ParameterError):
            circulator_fidelity(0.0, 0.0, 0.0)
        with pytest.raises(ParameterError):
            circulator_fidelity(0.5, -0.1, 0.5)


class TestGainMap:
    def _pump(self, params):
        return PumpSpec(g=1e-3, kappa_p=2 * params.kappa_a,
                        kappa_ex2_p=2 * params.kappa_ex2, omega_p=1.0)

    @staticmethod
    def _crossing(alphas, row):
        k = int(np.searchsorted(row, 1.0))
        x0, x1, g0, g1 = alphas[k - 1], alphas[k], row[k - 1], row[k]
        return x0 + (1.0 - g0) * (x1 - x0) / (g1 - g0)

    def test_nms_unit_gain_crossing(self):
        p = nms_params()
        alphas = np.linspace(5e7, 7e7, 21)
        g = gain_map(p, self._pump(p), alphas, [0.0])
        assert g.shape == (1, 21)
        crossing = self._crossing(alphas, g[0])
        assert crossing == pytest.approx(6.1e7, rel=0.03)
        assert crossing == pytest.approx(6.08055811e7, rel=1e-6)

    def test_mrs_unit_gain_crossing(self):
        p = mrs_params()
        alphas = np.linspace(8e7, 1.1e8, 31)
        g = gain_map(p, self._pump(p), alphas, [2.62])
        crossing = self._crossing(alphas, g[0])
        assert crossing == pytest.approx(9.2e7, rel=0.03)

    def test_unpumped_map_is_zero(self):
        p = nms_params().replace(Omega_p=0.0)
        g = gain_map(p, self._pump(p), [1e7, 1e8], [0.0, 0.5])
        assert np.all(g == 0.0)

    def test_empty_grid_errors(self):
        p = nms_params()
        with pytest.raises(ParameterError):
            gain_map(p, self._pump(p), [], [0.0])
