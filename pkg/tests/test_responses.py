import math

import numpy as np
import pytest

from agentctl.kernel import (
    BadGrid,
    dc_gain,
    default_horizon,
    frequency_response,
    make_tf,
    root_locus_data,
    tf_to_ss,
    time_response,
)

CLOSED_LOOP = make_tf([1, 3], [1, 4.16, 3.16])
UNSTABLE = make_tf([1, 3], [1, -2, -3])
FIRST_ORDER = make_tf([1], [1, 1])


class TestTimeResponse:
    def test_step_settles_to_dc_gain(self):
        assert default_horizon(CLOSED_LOOP) == pytest.approx(8.0)
        resp = time_response(CLOSED_LOOP, "step")
        target = dc_gain(CLOSED_LOOP)
        assert abs(resp.y[-1] - target) <= 0.01 * abs(target)
        assert resp.t[0] == 0.0 and resp.kind == "step"

    def test_unstable_step_diverges(self):
        assert default_horizon(UNSTABLE) == pytest.approx(5.0)
        resp = time_response(UNSTABLE, "step")
        assert abs(resp.y[-1]) > 100.0

    def test_impulse_matches_exponential(self):
        resp = time_response(FIRST_ORDER, "impulse", horizon=5.0, n_points=501)
        assert resp.y[0] == pytest.approx(1.0)
        idx = np.argmin(np.abs(resp.t - 1.0))
        assert resp.t[idx] == pytest.approx(1.0)
        assert abs(resp.y[idx] - math.exp(-1)) < 1e-3

    def test_horizon_clamping(self):
        assert default_horizon(make_tf([1], [1, 100])) == 1.0
        assert default_horizon(make_tf([1], [1, 0.01])) == 100.0
        assert default_horizon(make_tf([1], [1, 0])) == 10.0  # marginal fallback

    def test_grid_invariants(self):
        resp = time_response(FIRST_ORDER, "step", horizon=2.0, n_points=50)
        assert len(resp.t) == len(resp.y) == len(resp.u) == 50
        assert np.all(np.diff(resp.t) > 0)

    def test_forced_with_unit_input_equals_step(self):
        step = time_response(FIRST_ORDER, "step", horizon=3.0, n_points=100)
        forced = time_response(
            FIRST_ORDER, "forced", horizon=3.0, n_points=100, u=np.ones(100)
        )
        np.testing.assert_allclose(forced.y, step.y, atol=1e-12)

    def test_bad_grid(self):
        with pytest.raises(BadGrid):
            time_response(FIRST_ORDER, "step", horizon=-1.0)
        with pytest.raises(BadGrid):
            time_response(FIRST_ORDER, "forced", horizon=1.0, n_points=10)


class TestFrequencyResponse:
    def test_first_order_at_unit_frequency(self):
        resp = frequency_response(FIRST_ORDER, omega=[1.0])
        value = resp.response[0]
        assert value == pytest.approx(0.5 - 0.5j)
        mag_db = 20 * math.log10(abs(value))
        assert mag_db == pytest.approx(-3.0103, abs=1e-3)
        assert math.degrees(np.angle(value)) == pytest.approx(-45.0)

    def test_low_frequency_endpoint_near_dc(self):
        resp = frequency_response(FIRST_ORDER)
        assert abs(resp.response[0] - 1.0) < 0.02

    def test_tf_and_ss_forms_agree(self):
        ss = tf_to_ss(CLOSED_LOOP)
        tf_resp = frequency_response(CLOSED_LOOP)
        ss_resp = frequency_response(ss, omega=tf_resp.omega)
        np.testing.assert_allclose(ss_resp.response, tf_resp.response, atol=1e-9)

    def test_pole_on_grid_is_flagged(self):
        integrator_like = make_tf([1], [1, 0, 1])  # poles at +-1j
        resp = frequency_response(integrator_like, omega=[0.5, 1.0, 2.0])
        assert resp.has_nonfinite

    def test_bad_grid(self):
        with pytest.raises(BadGrid):
            frequency_response(FIRST_ORDER, omega=[-1.0, 1.0])


class TestRootLocus:
    def test_open_loop_poles_at_zero_gain(self):
        sys = make_tf([1], [1, 2, 0])  # 1 / (s (s + 2))
        data = root_locus_data(sys)
        assert data.gains[0] == 0.0
        start = sorted(data.branches[0], key=lambda z: z.real)
        assert start[0] == pytest.approx(-2.0, abs=1e-9)
        assert start[1] == pytest.approx(0.0, abs=1e-9)

    def test_breakaway_double_root(self):
        sys = make_tf([1], [1, 2, 0])
        data = root_locus_data(sys, gains=[0.0, 1.0])
        meet = data.branches[1]
        for root in meet:
            assert root == pytest.approx(-1.0, abs=1e-6)

    def test_branch_count_equals_order(self):
        sys = make_tf([1, 3], [1, -2, -3])
        data = root_locus_data(sys)
        assert data.branches.shape == (len(data.gains), sys.order)
        assert np.all(np.isfinite(data.branches))
