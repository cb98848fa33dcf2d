import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from curved_otto import (
    DomainError,
    LimitParams,
    OttoParams,
    energy,
    gamma,
    large_curvature_estimate,
    large_gap_shift,
    run_cycle,
    scan_reference_temperature,
    small_curvature_efficiency_series,
    small_curvature_estimate,
    theta3,
    theta3_prime,
)


def brute_theta3(q, terms=200):
    return 1.0 + 2.0 * math.fsum(q ** (n * n) for n in range(1, terms))


def brute_theta3_prime(q, terms=200):
    return 2.0 * math.fsum(n * n * q ** (n * n - 1) for n in range(1, terms))


class TestTheta3:
    def test_empty_sum(self):
        assert theta3(0.0) == 1.0

    def test_partial_sum_oracle(self):
        q = 0.1
        oracle = 1.0 + 2.0 * (q + q**4 + q**9 + q**16)
        assert theta3(q) == pytest.approx(oracle, rel=1e-14)
        assert theta3(q) == pytest.approx(1.2002000020, abs=5e-11)

    def test_high_precision_oracle_at_exp_minus_pi(self):
        mpmath.mp.dps = 40
        q = mpmath.exp(-mpmath.pi)
        oracle = 1 + 2 * mpmath.nsum(lambda n: q ** (n * n), [1, mpmath.inf])
        assert theta3(math.exp(-math.pi)) == pytest.approx(float(oracle), rel=1e-12)

    def test_domain_errors(self):
        for bad in (-0.1, 1.0, 1.5, float("nan")):
            with pytest.raises(DomainError):
                theta3(bad)

    @settings(max_examples=30, deadline=None)
    @given(q=st.floats(min_value=0.0, max_value=0.95))
    def test_matches_brute_force(self, q):
        assert theta3(q) == pytest.approx(brute_theta3(q), rel=1e-13)


class TestTheta3Prime:
    def test_leading_term(self):
        assert theta3_prime(0.0) == 2.0

    def test_partial_sum_oracle(self):
        q = 0.1
        oracle = 2.0 + 8.0 * q**3 + 18.0 * q**8 + 32.0 * q**15
        assert theta3_prime(q) == pytest.approx(oracle, rel=1e-14)
        # the three-term partial sum 2 + 8q^3 + 18q^8
        assert theta3_prime(q) == pytest.approx(2.0080001800, abs=5e-11)

    def test_shifted_square_sum_identity(self):
        # sum_{n>=0} (n+1)^2 q^((n+1)^2) equals (q/2) * theta3'(q)
        q = 0.3
        lhs = math.fsum((n + 1) ** 2 * q ** ((n + 1) ** 2) for n in range(100))
        rhs = 0.5 * q * theta3_prime(q)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    @pytest.mark.parametrize("q", [0.01, 0.1, 0.3, 0.6, 0.9])
    def test_both_series_identities(self, q):
        square_sum = math.fsum(q ** ((n + 1) ** 2) for n in range(200))
        weighted_sum = math.fsum((n + 1) ** 2 * q ** ((n + 1) ** 2) for n in range(200))
        assert square_sum == pytest.approx(0.5 * (theta3(q) - 1.0), rel=1e-12)
        assert weighted_sum == pytest.approx(0.5 * q * theta3_prime(q), rel=1e-12)


class TestLargeGapShift:
    def test_leading_values(self):
        assert large_gap_shift(0) == 1.0
        assert large_gap_shift(3) == 16.0

    def test_spectrum_difference_oracle(self):
        # The direct level shift per unit curvature difference approaches
        # half of large_gap_shift: the estimate formulas carry the other
        # half in their epsilon/2 prefactor.
        fd = (energy(2, 50.0) - energy(2, 49.9)) / 0.1
        assert fd == pytest.approx(large_gap_shift(2) / 2.0, rel=0.02)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            large_gap_shift(-1)


class TestSmallCurvature:
    def test_vanishes_with_epsilon(self):
        tiny = small_curvature_estimate(
            LimitParams(lam=0.05, epsilon=1e-12, theta_temp=0.05, t_ref=0.5)
        )
        assert abs(tiny.work) < 1e-12
        assert abs(tiny.efficiency) < 5e-12
        # both are linear in epsilon
        double = small_curvature_estimate(
            LimitParams(lam=0.05, epsilon=2e-12, theta_temp=0.05, t_ref=0.5)
        )
        assert double.efficiency == pytest.approx(2.0 * tiny.efficiency, rel=1e-12)
        assert double.work == pytest.approx(2.0 * tiny.work, rel=1e-12)

    def test_reference_temperature_scan_recovers_published_value(self):
        matches, closest = scan_reference_temperature(0.001488, lam=0.011, epsilon=0.001)
        assert matches, f"no t_ref in (0, 2] reproduces 0.001488; closest {closest}"
        assert any(abs(t - 0.5) < 0.01 for t, _ in matches)

    def test_exact_cycle_near_recovered_temperature(self):
        matches, _ = scan_reference_temperature(0.001488, lam=0.011, epsilon=0.001)
        t_ref = matches[len(matches) // 2][0]
        out = run_cycle(
            OttoParams(lambda_cold=0.01, lambda_hot=0.011, t_hot=t_ref + 0.05, t_cold=t_ref)
        )
        assert out.efficiency == pytest.approx(0.001314, rel=0.10)

    def test_two_level_form_vs_all_level_ratio(self):
        # The compact two-level efficiency keeps only the n = 0 term in the
        # heat denominator, so it overshoots the all-level work/heat ratio
        # by a sizable factor; at these parameters the gap is 45%.
        est = small_curvature_estimate(
            LimitParams(lam=0.05, epsilon=0.005, theta_temp=0.02, t_ref=0.5)
        )
        ratio = est.work / est.heat_in
        deviation = abs(ratio - est.efficiency) / est.efficiency
        assert deviation == pytest.approx(0.4507, abs=0.01)
        assert ratio == pytest.approx(
            small_curvature_efficiency_series(0.05, 0.5, 0.005), rel=1e-12
        )

    @pytest.mark.parametrize("epsilon", [0.005, 0.002, 0.001])
    def test_converges_to_exact_efficiency(self, epsilon):
        est = small_curvature_estimate(
            LimitParams(lam=0.05, epsilon=epsilon, theta_temp=0.05, t_ref=0.5)
        )
        exact = run_cycle(
            OttoParams(lambda_cold=0.05 - epsilon, lambda_hot=0.05, t_hot=0.55, t_cold=0.5)
        )
        assert 0.8 <= est.efficiency / exact.efficiency <= 1.3

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            LimitParams(lam=0.05, epsilon=0.0, theta_temp=0.05, t_ref=0.5)
        with pytest.raises(DomainError):
            LimitParams(lam=0.05, epsilon=0.001, theta_temp=0.05, t_ref=0.0)
        with pytest.raises(DomainError):
            LimitParams(lam=-0.05, epsilon=0.001, theta_temp=0.05, t_ref=0.5)


class TestLargeCurvature:
    def test_published_efficiency_point(self):
        est = large_curvature_estimate(10.0, 0.2, 1.0, 0.1)
        assert est.efficiency == 0.2 / 10.0
        assert est.efficiency == pytest.approx(0.02, abs=0.0)

    def test_efficiency_is_temperature_independent(self):
        a = large_curvature_estimate(10.0, 0.2, 1.0, 0.1)
        b = large_curvature_estimate(10.0, 0.2, 2.0, 0.5)
        assert a.efficiency == b.efficiency

    def test_work_heat_ratio_equals_efficiency(self):
        est = large_curvature_estimate(10.0, 0.2, 1.0, 0.1)
        assert est.work / est.heat_in == est.efficiency
        exact = run_cycle(OttoParams(lambda_cold=9.8, lambda_hot=10.0, t_hot=1.0, t_cold=0.1))
        assert exact.efficiency == pytest.approx(0.0197, rel=0.01)

    @pytest.mark.parametrize("lam", [8.0, 10.0, 15.0])
    def test_converges_to_exact_efficiency(self, lam):
        epsilon = 0.02 * lam
        est = large_curvature_estimate(lam, epsilon, 1.0, 0.1)
        exact = run_cycle(
            OttoParams(lambda_cold=lam - epsilon, lambda_hot=lam, t_hot=1.0, t_cold=0.1)
        )
        assert abs(est.efficiency - exact.efficiency) / est.efficiency <= 0.05

    def test_underflowed_nome_falls_back_to_unit_ratio(self):
        # exp(-lam/(2T)) underflows to exactly 0 for both baths, the excited
        # ratio limit is 1 on both sides, and the bracket collapses to zero
        est = large_curvature_estimate(10.0, 0.2, 0.003, 0.001)
        assert est.work == 0.0
        assert est.heat_in == 0.0
        assert est.efficiency == pytest.approx(0.02)

    def test_matches_theta_form_at_moderate_nome(self):
        lam, t_hot, t_cold = 6.0, 2.0, 0.8
        q_h = math.exp(-lam / (2.0 * t_hot))
        q_c = math.exp(-lam / (2.0 * t_cold))
        bracket = q_h * theta3_prime(q_h) / (theta3(q_h) - 1.0) - q_c * theta3_prime(q_c) / (
            theta3(q_c) - 1.0
        )
        est = large_curvature_estimate(lam, 0.1, t_hot, t_cold)
        assert est.work == pytest.approx(0.5 * 0.1 * bracket, rel=1e-12)
        assert est.heat_in == pytest.approx(0.5 * lam * bracket, rel=1e-12)

    def test_gamma_approaches_curvature(self):
        for lam in (5.0, 8.0, 10.0, 20.0, 50.0):
            assert abs(gamma(lam) / lam - 1.0) <= 1.0 / lam**2

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            large_curvature_estimate(0.0, 0.1, 1.0, 0.1)
        with pytest.raises(DomainError):
            large_curvature_estimate(10.0, -0.1, 1.0, 0.1)
        with pytest.raises(DomainError):
            large_curvature_estimate(10.0, 0.1, 0.0, 0.1)
