import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curved_otto import (
    DomainError,
    Mode,
    OttoParams,
    carnot_efficiency,
    classify_mode,
    run_cycle,
    stroke_quantities,
)


def params(l_cold, l_hot, t_hot=1.0, t_cold=0.1):
    return OttoParams(lambda_cold=l_cold, lambda_hot=l_hot, t_hot=t_hot, t_cold=t_cold)


class TestRunCycle:
    def test_equal_curvatures_do_no_work(self):
        out = run_cycle(params(0.5, 0.5))
        assert abs(out.work) <= 1e-12
        assert out.mode is Mode.DISSIPATOR
        assert out.efficiency is None

    def test_large_curvature_efficiency_matches_two_percent_regime(self):
        out = run_cycle(params(9.8, 10.0))
        assert out.mode is Mode.ENGINE
        assert out.efficiency == pytest.approx(0.0197, rel=0.01)

    def test_reversed_curvatures_consume_work(self):
        out = run_cycle(params(0.5, 0.3))
        assert out.work < 0.0

    def test_first_law_identity_random_grid(self):
        rng = np.random.default_rng(20240811)
        lams = rng.uniform(0.0, 8.0, size=(10, 2))
        t_pairs = [(1.0, 0.1), (2.0, 0.5), (0.9, 0.3)]
        t_more = [(3.0, 0.2), (1.5, 1.0), (0.5, 0.05)]
        for l_cold, l_hot in lams:
            for t_hot, t_cold in t_pairs + t_more:
                out = run_cycle(params(l_cold, l_hot, t_hot, t_cold))
                assert abs(out.work - (out.q_hot + out.q_cold_absorbed)) <= 1e-10

    def test_carnot_bound_on_engine_rows(self):
        for l_hot in np.linspace(0.15, 7.0, 40):
            out = run_cycle(params(0.1, float(l_hot)))
            if out.mode is Mode.ENGINE:
                assert out.efficiency <= carnot_efficiency(1.0, 0.1) + 1e-12
                assert out.efficiency > 0.0

    def test_sign_rule_in_the_engine_window(self):
        # With t_hot = 1, t_cold = 0.1 the refrigerator boundary sits above
        # lambda_hot ~ 6.6 for any lambda_cold in this window, so the work
        # sign tracks the curvature ordering everywhere on [0.01, 5]**2.
        grid = np.linspace(0.01, 5.0, 8)
        for l_cold in grid:
            for l_hot in grid:
                out = run_cycle(params(float(l_cold), float(l_hot)))
                if l_cold == l_hot:
                    assert abs(out.work) <= 1e-12
                else:
                    assert math.copysign(1.0, out.work) == math.copysign(1.0, l_hot - l_cold)

    def test_refrigerator_has_cop(self):
        out = run_cycle(params(0.1, 8.0))
        assert out.mode is Mode.REFRIGERATOR
        assert out.cop is not None and out.cop > 0.0
        assert out.efficiency is None

    def test_outcome_bookkeeping(self):
        out = run_cycle(params(0.1, 1.0))
        assert out.q_cold_absorbed == -out.q_cold_out
        assert out.n_levels >= 1

    @settings(max_examples=40, deadline=None)
    @given(
        l_cold=st.floats(min_value=0.0, max_value=8.0),
        l_hot=st.floats(min_value=0.0, max_value=8.0),
        t_cold=st.floats(min_value=0.05, max_value=1.0),
        dt=st.floats(min_value=1e-3, max_value=2.0),
    )
    def test_first_law_property(self, l_cold, l_hot, t_cold, dt):
        out = run_cycle(params(l_cold, l_hot, t_cold + dt, t_cold))
        assert abs(out.work - (out.q_hot + out.q_cold_absorbed)) <= 1e-10


class TestStrokeQuantities:
    def test_equal_curvatures_cancel(self):
        s = stroke_quantities(params(0.7, 0.7))
        assert s.w_expansion == pytest.approx(-s.w_compression, abs=1e-15)
        assert s.w_expansion + s.w_compression == pytest.approx(0.0, abs=1e-15)

    def test_frozen_ground_state_compression_work(self):
        # At t_cold = 0.01 the cold populations are (1, 0, ...), so the
        # compression stroke costs exactly the ground-level shift.
        s = stroke_quantities(params(0.1, 1.0, t_hot=1.0, t_cold=0.01))
        e0_cold = 0.25 * (0.1 + math.sqrt(0.1**2 + 4.0))
        e0_hot = 0.25 * (1.0 + math.sqrt(1.0 + 4.0))
        assert s.w_compression == pytest.approx(e0_cold - e0_hot, abs=1e-12)

    def test_stroke_sum_equals_net_work(self):
        for l_cold, l_hot, t_hot, t_cold in [
            (0.1, 1.0, 1.0, 0.1),
            (2.0, 0.3, 1.0, 0.1),
            (0.5, 5.0, 2.0, 0.5),
        ]:
            s = stroke_quantities(params(l_cold, l_hot, t_hot, t_cold))
            out = run_cycle(params(l_cold, l_hot, t_hot, t_cold))
            assert s.w_expansion + s.w_compression == pytest.approx(out.work, abs=1e-10)
            assert s.q_hot == out.q_hot
            assert s.q_cold_absorbed == out.q_cold_absorbed


class TestClassifyMode:
    def test_engine_sign_pattern(self):
        assert classify_mode(2.0, -1.5, 0.5) is Mode.ENGINE

    def test_refrigerator_sign_pattern(self):
        assert classify_mode(-0.3, 0.1, -0.2) is Mode.REFRIGERATOR

    def test_zeros_resolve_to_dissipator(self):
        assert classify_mode(0.0, 0.0, 0.0) is Mode.DISSIPATOR
        assert classify_mode(1e-13, -1e-13, 5e-14) is Mode.DISSIPATOR

    def test_work_in_heat_out_is_dissipator(self):
        assert classify_mode(0.4, -0.6, -0.2) is Mode.DISSIPATOR

    def test_beyond_transition_point_is_refrigerator(self):
        out = run_cycle(params(0.1, 8.0))
        assert out.mode is Mode.REFRIGERATOR


class TestCarnotEfficiency:
    def test_direct_values(self):
        assert carnot_efficiency(1.0, 0.1) == pytest.approx(0.9, rel=1e-15)
        assert carnot_efficiency(2.0, 0.5) == pytest.approx(0.75, rel=1e-15)

    def test_near_equal_temperatures(self):
        assert carnot_efficiency(1.0, 1.0 - 1e-9) == pytest.approx(1e-9, rel=1e-5)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            carnot_efficiency(0.1, 1.0)
        with pytest.raises(DomainError):
            carnot_efficiency(1.0, 0.0)


class TestOttoParams:
    def test_temperature_ordering_enforced(self):
        with pytest.raises(DomainError):
            OttoParams(lambda_cold=0.1, lambda_hot=1.0, t_hot=0.1, t_cold=0.1)
        with pytest.raises(DomainError):
            OttoParams(lambda_cold=0.1, lambda_hot=1.0, t_hot=0.1, t_cold=0.5)

    def test_curvature_domain_enforced(self):
        with pytest.raises(DomainError):
            OttoParams(lambda_cold=-0.1, lambda_hot=1.0, t_hot=1.0, t_cold=0.1)

    def test_reversed_curvature_ordering_allowed(self):
        OttoParams(lambda_cold=1.0, lambda_hot=0.2, t_hot=1.0, t_cold=0.1)
