import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relaysec.analytics import (
    EULER_GAMMA,
    TWO_HOP_HIGH_SNR_SLOPE,
    cdf_harmonic,
    cdf_ratio,
    eavesdrop_rate,
    esr_asymptote,
    esr_lower_bound,
    expected_harmonic_mean,
    high_snr_offset,
    high_snr_slope,
    legit_rate_lower_bound,
    prob_r1_dominates_oracle,
    prob_r1_dominates_series,
    t1_closed,
    t2,
    t2_printed,
)
from relaysec.errors import DomainError
from relaysec.model import TOPOLOGY_1, TOPOLOGY_2, ChannelStats, db_to_linear, topology_to_stats


def stats_with(bar_g, bar_h, bar_f, rho=1.0):
    return ChannelStats(bar_g / rho, bar_h / rho, bar_f / rho, 1.0, 1.0, 1.0, rho=rho)


def test_euler_gamma_constant():
    assert EULER_GAMMA == pytest.approx(0.5772156649015329, rel=1e-15)


def test_legit_lower_bound_direct_evaluation():
    s = stats_with(2.0, 3.0, 5.0)
    expected = math.log1p(
        math.exp(-3.0 * EULER_GAMMA) * (2.0 * 3.0 * 5.0) / (3.0 * 3.0 * 5.0 + 2.0 * 5.0 * 2.0 + 2.0 * 3.0)
    ) / (3.0 * math.log(2.0))
    assert legit_rate_lower_bound(s) == pytest.approx(expected, rel=1e-12)


def test_legit_lower_bound_monotone_in_rho():
    vals = [legit_rate_lower_bound(topology_to_stats(TOPOLOGY_1, db_to_linear(db)))
            for db in range(0, 65, 5)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_dominance_probability_reference_value():
    # equal hop means; fixed point of the scale-invariant integral
    p = prob_r1_dominates_oracle(topology_to_stats(TOPOLOGY_1, db_to_linear(30.0)))
    assert p == pytest.approx(0.642699082, abs=1e-6)


def test_dominance_probability_scale_invariant():
    base = prob_r1_dominates_oracle(stats_with(2.0, 1.0, 3.0))
    for c in (0.1, 10.0):
        scaled = prob_r1_dominates_oracle(stats_with(2.0 * c, 1.0 * c, 3.0 * c))
        assert scaled == pytest.approx(base, abs=1e-6)


def test_dominance_probability_limits():
    # huge gamma_f mean makes the event near-certain; tiny makes it rare
    assert prob_r1_dominates_oracle(stats_with(1.0, 1.0, 1e4)) > 0.99
    assert prob_r1_dominates_oracle(stats_with(1.0, 1.0, 1e-4)) < 0.01


def test_dominance_series_order_one_closed_form():
    s = stats_with(2.0, 1.5, 3.0)
    mx, my, mz = s.bar_f, s.bar_h, s.bar_g
    denom = mz - my * math.sqrt(mx * mz) + 2.0 * mz * my
    expected = 8.0 * math.sqrt(mx) * mz**2.5 * my / (3.0 * denom**2)
    out = prob_r1_dominates_series(s, order=1)
    assert out.raw == pytest.approx(expected, rel=1e-12)
    assert out.value == min(max(out.raw, 0.0), 1.0)


def test_dominance_series_clamping():
    out = prob_r1_dominates_series(topology_to_stats(TOPOLOGY_1, db_to_linear(30.0)), order=1)
    assert 0.0 <= out.value <= 1.0
    assert out.clamped == (out.raw != out.value)


def test_t1_equal_means():
    assert t1_closed(stats_with(4.0, 4.0, 1.0)) == pytest.approx(1.0, rel=1e-9)


def test_t1_ratio_two():
    assert t1_closed(stats_with(2.0, 1.0, 1.0)) == pytest.approx(2.0 * math.log(2.0), rel=1e-12)


def test_t1_continuous_at_singularity():
    for eps in (1e-9, -1e-9):
        assert t1_closed(stats_with(1.0 + eps, 1.0, 1.0)) == pytest.approx(1.0, abs=1e-6)


def test_t1_scale_invariant():
    a = t1_closed(stats_with(3.0, 1.0, 1.0))
    b = t1_closed(stats_with(300.0, 100.0, 1.0))
    assert a == pytest.approx(b, rel=1e-12)


def test_cdf_ratio_values():
    assert cdf_ratio(0.0, 1.0, 1.0) == 0.0
    assert cdf_ratio(1.0, 1.0, 1.0) == pytest.approx(0.5, rel=1e-12)
    assert cdf_ratio(1e9, 1.0, 1.0) == pytest.approx(1.0, abs=1e-8)


@settings(max_examples=40)
@given(mx=st.floats(min_value=0.01, max_value=100), my=st.floats(min_value=0.01, max_value=100))
def test_cdf_ratio_monotone_and_bounded(mx, my):
    grid = np.logspace(-3, 3, 50)
    vals = cdf_ratio(grid, mx, my)
    assert np.all((vals >= 0) & (vals <= 1))
    assert np.all(np.diff(vals) >= 0)


def test_cdf_harmonic_values():
    assert cdf_harmonic(0.0, 1.0, 1.0) == 0.0
    assert cdf_harmonic(50.0, 1.0, 1.0) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=40)
@given(mx=st.floats(min_value=0.01, max_value=100), my=st.floats(min_value=0.01, max_value=100))
def test_cdf_harmonic_monotone_and_bounded(mx, my):
    grid = np.linspace(0.0, 10.0 * min(mx, my), 60)
    vals = cdf_harmonic(grid, mx, my)
    assert np.all((vals >= 0) & (vals <= 1))
    assert np.all(np.diff(vals) >= -1e-12)


def test_expected_harmonic_mean_unit_case():
    # E{XY/(X+Y)} = 1/3 for independent unit-mean exponentials
    assert expected_harmonic_mean(1.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-8)


def test_expected_harmonic_mean_linear_scaling():
    base = expected_harmonic_mean(2.0, 0.5)
    assert expected_harmonic_mean(20.0, 5.0) == pytest.approx(10.0 * base, rel=1e-8)


def test_expected_harmonic_mean_below_smaller_mean():
    assert expected_harmonic_mean(3.0, 0.7) < 0.7


def test_t2_equal_means():
    # E{W} = bar/3 with bar_f = bar gives ln(1 + 1/3)
    s = stats_with(6.0, 6.0, 6.0)
    assert t2(s) == pytest.approx(math.log(4.0 / 3.0), abs=1e-8)


def test_t2_printed_is_quarantined():
    s = stats_with(20.0, 10.0, 10.0)
    # the literal published form disagrees wildly with the mean-ratio value
    assert not math.isclose(t2_printed(s), t2(s), rel_tol=0.5)
    assert math.isnan(t2_printed(stats_with(1.0, 1.0, 1.0)))


def test_eavesdrop_rate_assembly_identity():
    d = eavesdrop_rate(topology_to_stats(TOPOLOGY_1, db_to_linear(30.0)))
    assembled = (d.p_dominates * d.t1 + (1.0 - d.p_dominates) * d.t2) / (3.0 * math.log(2.0))
    assert d.r_e == pytest.approx(assembled, rel=1e-12)
    assert 0.0 <= d.p_dominates <= 1.0
    assert d.t1 >= 0.0 and d.t2 >= 0.0


def test_eavesdrop_rate_scale_invariant():
    base = eavesdrop_rate(topology_to_stats(TOPOLOGY_1, db_to_linear(30.0))).r_e
    for rho_db in (10.0, 50.0):
        other = eavesdrop_rate(topology_to_stats(TOPOLOGY_1, db_to_linear(rho_db))).r_e
        assert other == pytest.approx(base, abs=1e-6)


def test_esr_lower_bound_clamps_at_low_snr():
    assert esr_lower_bound(topology_to_stats(TOPOLOGY_1, db_to_linear(0.0))) == 0.0


def test_esr_lower_bound_nondecreasing():
    vals = [esr_lower_bound(topology_to_stats(TOPOLOGY_1, db_to_linear(db)))
            for db in range(0, 65, 5)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_slopes():
    assert high_snr_slope() == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert TWO_HOP_HIGH_SNR_SLOPE == 0.5


def test_offset_symmetric_components():
    m = 0.25
    p = high_snr_offset(m, m, m)
    assert p.b_term == pytest.approx(1.0, rel=1e-9)
    assert p.c_term == pytest.approx(math.log(1.5), rel=1e-12)
    assert p.a_term == pytest.approx(3.0 * EULER_GAMMA - math.log(m / 6.0), rel=1e-12)
    expected_l = (0.5 * p.b_term + 0.5 * p.c_term + p.a_term) / math.log(2.0)
    assert p.l_infinity == pytest.approx(expected_l, rel=1e-12)


def test_offset_reference_value():
    s = topology_to_stats(TOPOLOGY_1, 1.0)
    p = high_snr_offset(s.m_g, s.m_h, s.m_f)
    assert p.l_infinity == pytest.approx(8.79702980335682, rel=1e-10)


def test_offset_smaller_for_denser_topology():
    s1 = topology_to_stats(TOPOLOGY_1, 1.0)
    s2 = topology_to_stats(TOPOLOGY_2, 1.0)
    l1 = high_snr_offset(s1.m_g, s1.m_h, s1.m_f).l_infinity
    l2 = high_snr_offset(s2.m_g, s2.m_h, s2.m_f).l_infinity
    assert l2 < l1


def test_asymptote_root_and_slope():
    s = topology_to_stats(TOPOLOGY_1, 1.0)
    p = high_snr_offset(s.m_g, s.m_h, s.m_f)
    at_root = esr_asymptote(2.0**p.l_infinity, s.m_g, s.m_h, s.m_f)
    assert at_root == pytest.approx(0.0, abs=1e-9)
    r50 = esr_asymptote(db_to_linear(50.0), s.m_g, s.m_h, s.m_f)
    r60 = esr_asymptote(db_to_linear(60.0), s.m_g, s.m_h, s.m_f)
    # 10 dB is log2(10) ~ 3.3219 in log2-SNR; slope 1/3
    assert r60 - r50 == pytest.approx(math.log2(10.0) / 3.0, rel=1e-9)
    assert esr_asymptote(1e-6, s.m_g, s.m_h, s.m_f) == 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        high_snr_offset(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        esr_asymptote(0.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        cdf_ratio(-1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        cdf_harmonic(1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        expected_harmonic_mean(-1.0, 1.0)
