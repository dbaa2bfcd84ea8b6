import math

import mpmath
import numpy as np
import pytest

from zetakit.errors import DomainError, RangeError, RegimeError, VerificationFailure
from zetakit.models import SeriesKind
from zetakit.schemas import LinearCoeffs
from zetakit.services import identities
from zetakit.services.identities import (
    ab_values,
    amgm_margin,
    beta_series,
    beta_weighted_sum,
    det_grid,
    divisor_inner_sums,
    divisor_pairs,
    double_sum_lhs,
    double_sum_rhs,
    eta_partial_cos,
    eta_partial_sin,
    f1,
    f2,
    linear_coeffs,
    mrzf,
    mrzf_terms,
    probe_zero,
    rearrangement_sums,
    rotated_partial,
    solve_2x2,
    swap_discrepancy,
)
from zetakit.services.zeta import find_zeros, zeta

pytestmark = pytest.mark.unit


@pytest.fixture(scope="module")
def first_zero():
    (record,) = find_zeros(14.0, 14.5, 0.1, 1e-12)
    return record.t


def test_mrzf_examples():
    expected = -math.sin(math.log(2)) / 2**0.75
    assert mrzf(1, 1, 3.0, 0.7) == 0
    assert mrzf(2, 1, 1.0, 0.75) == pytest.approx(expected, abs=1e-15)
    assert mrzf(1, 2, 1.0, 0.75) == pytest.approx(expected, abs=1e-15)


def test_mrzf_overflow():
    with pytest.raises(RangeError):
        mrzf(2**40, 2**40, 1.0, 1.0)
    with pytest.raises(DomainError):
        mrzf(0, 3, 1.0, 1.0)


def test_mrzf_terms_matches_scalar():
    m = np.array([1, 2, 3, 4, 6, 12, 35])
    l = np.array([5, 1, 2, 7, 3, 4, 8])
    vector = mrzf_terms(m, l, 2.3, 0.9)
    scalar = [mrzf(int(a), int(b), 2.3, 0.9) for a, b in zip(m, l)]
    assert np.allclose(vector, scalar, rtol=0, atol=1e-15)


def test_eta_partial_cos_alternating_oracle():
    r = eta_partial_cos(2, 0, 60)
    assert r.accelerated
    assert r.value == pytest.approx(math.pi**2 / 12, abs=1e-12)


def test_eta_partial_sin_vanishes_at_t_zero():
    assert eta_partial_sin(0.8, 0, 50).value == 0
    assert eta_partial_sin(0.8, 0, 50, accelerate=False).value == 0


def test_eta_partial_sin_unwinds_eta():
    s = 0.75 + 1j
    z = zeta(s, 1e-12).as_complex()
    eta_value = z * (1 - 2 ** (1 - s))
    assert eta_partial_sin(0.75, 1, 200).value == pytest.approx(-eta_value.imag, abs=1e-8)
    assert eta_partial_cos(0.75, 1, 200).value == pytest.approx(eta_value.real, abs=1e-8)


def test_raw_and_accelerated_agree():
    raw = eta_partial_cos(2, 1, 100_000, accelerate=False)
    fast = eta_partial_cos(2, 1, 60)
    assert abs(raw.value - fast.value) < 1e-6
    assert raw.est_error > 0 and not raw.accelerated


def test_alternating_sums_need_positive_sigma():
    with pytest.raises(DomainError):
        eta_partial_cos(0, 1, 10)


@pytest.mark.parametrize("phi", [0.0, 0.4, math.pi / 2, 2.0])
def test_rotation_identity(phi):
    sigma, t, n = 0.6, 9.5, 300
    direct = rotated_partial(sigma, t, phi, n).value
    combined = math.sin(phi) * eta_partial_cos(sigma, t, n).value + math.cos(phi) * eta_partial_sin(sigma, t, n).value
    assert abs(direct - combined) < 1e-10


def test_rotation_reductions():
    assert rotated_partial(0.6, 3.0, 0.0, 100).value == pytest.approx(eta_partial_sin(0.6, 3.0, 100).value, abs=1e-14)
    assert rotated_partial(0.6, 3.0, math.pi / 2, 100).value == pytest.approx(eta_partial_cos(0.6, 3.0, 100).value, abs=1e-13)


@pytest.mark.parametrize("m", [2, 3, 12])
def test_f_scaling_identity(m):
    sigma, t, n = 0.7, 6.0, 200
    rotated = rotated_partial(sigma, t, t * math.log(m), n).value
    assert abs(f1(m, sigma, t, n).value - m**-sigma * rotated) < 1e-12
    rotated_cos = rotated_partial(sigma, t, t * math.log(m) + math.pi / 2, n).value
    assert abs(f2(m, sigma, t, n).value - m**-sigma * rotated_cos) < 1e-12


def test_f_reduce_to_eta_partials_at_m_one():
    assert f1(1, 0.6, 4.0, 100).value == pytest.approx(eta_partial_sin(0.6, 4.0, 100).value, abs=1e-14)
    assert f2(1, 0.6, 4.0, 100).value == pytest.approx(eta_partial_cos(0.6, 4.0, 100).value, abs=1e-14)


def test_residuals_vanish_at_first_zero(first_zero):
    assert abs(eta_partial_cos(0.5, first_zero, 2000).value) < 1e-4
    assert abs(eta_partial_sin(0.5, first_zero, 2000).value) < 1e-4
    for m in (2, 3, 10):
        a = f1(m, 0.5, first_zero, 2000).value
        b = f2(m, 0.5, first_zero, 2000).value
        assert abs(a) < 1e-4 and abs(b) < 1e-4
        assert a * a + b * b < 1e-7


def test_double_sum_lhs_small_cases():
    assert double_sum_lhs(1, 1, 2.0, 1.5) == 0
    row = double_sum_lhs(1, 40, 2.0, 1.5)
    expected = math.fsum(mrzf(1, l, 2.0, 1.5) for l in range(1, 41))
    assert row == pytest.approx(expected, abs=1e-14)


def test_double_sum_lhs_row_blocks_are_exact(monkeypatch):
    monkeypatch.setattr(identities, "_BLOCK_TERMS", 64)
    m, l = np.meshgrid(np.arange(1, 41), np.arange(1, 31), indexing="ij")
    expected = math.fsum(mrzf_terms(m.ravel(), l.ravel(), 4.0, 0.9))
    assert double_sum_lhs(40, 30, 4.0, 0.9) == expected


def test_double_sum_rhs_small_cases():
    assert double_sum_rhs(1, 3.0, 1.2) == 0
    inner = divisor_inner_sums(10, 3.0, 1.2)
    assert inner[3] == pytest.approx(math.sin(3.0 * math.log(4)) / 4**1.2, abs=1e-15)
    assert inner[5] == pytest.approx(0, abs=1e-15)


def test_inner_sums_follow_closed_form_beta():
    rng = np.random.default_rng(7)
    log_n = np.log(np.arange(1, 2001, dtype=float))
    from zetakit.services.identities import beta_array

    for _ in range(3):
        t, sigma = rng.uniform(0, 40), rng.uniform(0.5, 2)
        inner = divisor_inner_sums(2000, t, sigma)
        expected = beta_array(2000) * np.sin(t * log_n) * np.exp(-sigma * log_n)
        assert np.max(np.abs(inner - expected)) < 1e-12


def test_rearrangement_sums_agree():
    rows, cols, diagonals = rearrangement_sums(30, 50, 5.0, 0.8)
    assert abs(rows - cols) < 1e-12
    assert abs(rows - diagonals) < 1e-12


def test_swap_matched_gap_is_exact():
    (report,) = swap_discrepancy(1.0, 2.0, [60])
    assert report.gap == 0
    assert report.lhs == report.rhs


def test_swap_absolute_regime_converges():
    reports = swap_discrepancy(1.0, 2.0, [50, 400])
    assert [r.truncation for r in reports] == [50, 400]
    assert reports[-1].truncation_gap < 1e-4


def test_swap_t_zero_is_all_zero():
    (report,) = swap_discrepancy(0.0, 2.0, [50])
    assert report.lhs == 0 and report.diagonal_rhs == 0 and report.gap == 0


def test_swap_independent_of_jobs():
    assert swap_discrepancy(14.13, 0.6, [20, 40, 60], jobs=1) == swap_discrepancy(14.13, 0.6, [20, 40, 60], jobs=3)


@pytest.mark.parametrize("bad", [[], [100, 50], [50, 50]])
def test_swap_truncations_validated(bad):
    with pytest.raises(DomainError):
        swap_discrepancy(1.0, 2.0, bad)


def test_double_sum_rhs_negative_sigma():
    N = 160000
    m, l = divisor_pairs(N)
    assert double_sum_rhs(N, 3.0, -1.0) == math.fsum(mrzf_terms(m, l, 3.0, -1.0))


def test_swap_negative_sigma_reports_without_failing():
    reports = swap_discrepancy(3.0, -1.0, [100, 400])
    assert [r.gap for r in reports] == [0, 0]


def test_double_sum_rhs_still_rejects_wrong_reduction(monkeypatch):
    monkeypatch.setattr(identities, "beta_array", lambda N: np.zeros(N))
    with pytest.raises(VerificationFailure):
        double_sum_rhs(50, 3.0, 1.2)


def test_beta_series_sine_at_t_zero():
    parts = beta_series(0.9, 0.0, 100, SeriesKind.SINE)
    assert parts.total == 0


def test_beta_series_cosine_at_sigma_one():
    parts = beta_series(1.0, 0.0, 50, SeriesKind.COSINE, tail_correction=True)
    zeta2 = math.pi**2 / 6
    assert parts.square_part == pytest.approx(zeta2, abs=1e-10)
    assert parts.twice_square_part == pytest.approx(zeta2, abs=1e-10)
    assert abs(parts.total) < 1e-10


def test_beta_series_matches_weighted_sum():
    N = 300
    for kind in (SeriesKind.SINE, SeriesKind.COSINE):
        parts = beta_series(3.0, 2.5, N, kind)
        # every square and twice-square up to 2 N^2 is covered once the tails are negligible
        assert parts.total == pytest.approx(beta_weighted_sum(3.0, 2.5, 2 * N * N, kind), abs=1e-10)


def test_beta_series_regime_guard():
    with pytest.raises(RegimeError):
        beta_series(0.5, 1.0, 10, SeriesKind.SINE)


def test_ab_values_at_t_zero():
    ab = ab_values(0.8, 0.0, 1e-12)
    assert ab.A == 0
    assert ab.B == pytest.approx(float(mpmath.zeta(1.6)), abs=1e-10)


@pytest.mark.parametrize("sigma", [0.6, 0.75, 0.9])
@pytest.mark.parametrize("t", [1.0, 14.1347, 25.0])
def test_ab_values_reproduce_zeta_2s(sigma, t):
    ab = ab_values(sigma, t, 1e-12)
    target = zeta(complex(2 * sigma, 2 * t), 1e-12).as_complex()
    assert abs(complex(ab.B, -ab.A) - target) < 1e-7


def test_ab_values_regime_guard():
    with pytest.raises(RegimeError):
        ab_values(0.5, 3.0)


def test_linear_coeffs_structure():
    c = linear_coeffs(0.75, 14.134725)
    assert c.r == -c.q and c.s_coef == c.p
    assert c.det == pytest.approx(c.p**2 + c.q**2, abs=1e-15)
    assert c.det > 0
    assert c.det == pytest.approx(amgm_margin(0.75, 14.134725), abs=1e-12)

    flat = linear_coeffs(0.75, 0.0)
    assert flat.q == 0 and flat.r == 0
    assert flat.p == pytest.approx(1 - 2**0.25)


@pytest.mark.parametrize("sigma", [0.5, 1.0, 1.2])
def test_linear_coeffs_domain(sigma):
    with pytest.raises(DomainError):
        linear_coeffs(sigma, 1.0)
    with pytest.raises(DomainError):
        amgm_margin(sigma, 1.0)


def test_amgm_margin_extremes():
    assert amgm_margin(0.75, 0.0) == pytest.approx((1 - 2**0.25) ** 2, abs=1e-15)
    t_quarter = math.pi / (2 * math.log(2))
    assert amgm_margin(0.75, t_quarter) == pytest.approx(1 + 2**0.5, abs=1e-12)


def test_det_grid_minimum_on_boundary():
    sigmas = np.round(0.51 + 0.01 * np.arange(49), 2)
    ts = np.round(0.01 * np.arange(5001), 2)
    summary = det_grid(sigmas, ts)
    assert summary.min_det > 0
    assert summary.sigma_at_min == 0.99 and summary.t_at_min == 0
    assert summary.min_det == pytest.approx((1 - 2**0.01) ** 2, abs=1e-15)
    assert summary.max_margin_gap <= 1e-12


def test_solve_2x2_examples():
    identity = LinearCoeffs(sigma=0.75, t=0, p=1, q=0, r=0, s_coef=1, det=1)
    residuals = solve_2x2(identity, 3, -2)
    assert (residuals.residual1, residuals.residual2) == (3, 2)
    assert residuals.kappa == pytest.approx(1)

    zero = solve_2x2(linear_coeffs(0.75, 14.1347), 0, 0)
    assert (zero.residual1, zero.residual2) == (0, 0)

    singular = LinearCoeffs(sigma=0.75, t=0, p=0, q=0, r=0, s_coef=0, det=0)
    assert solve_2x2(singular, 1, 1).kappa is None


def test_beta_series_totals_equal_system_residuals():
    sigma, t = 0.75, 14.1347
    ab = ab_values(sigma, t, 1e-12)
    c = linear_coeffs(sigma, t)
    system = solve_2x2(c, ab.A, ab.B)
    sine = beta_series(sigma, t, 100, SeriesKind.SINE, tail_correction=True)
    cosine = beta_series(sigma, t, 100, SeriesKind.COSINE, tail_correction=True)
    assert abs(abs(sine.total) - system.residual1) < 1e-8
    assert abs(abs(cosine.total) - system.residual2) < 1e-8
    assert sine.total == pytest.approx(c.p * ab.A + c.q * ab.B, abs=1e-8)
    assert cosine.total == pytest.approx(c.r * ab.A + c.s_coef * ab.B, abs=1e-8)


def test_probe_at_genuine_zero(first_zero):
    report = probe_zero(0.5, first_zero)
    assert report.residual_31 < 1e-4 and report.residual_32 < 1e-4
    assert all(r < 1e-4 for _, r in report.residual_33)
    assert all(abs(v) < 1e-4 for _, v in report.f1_samples + report.f2_samples)
    assert report.A is None and report.coeffs is None and report.system_residuals is None
    assert report.regime_note
    assert report.zeta2s is not None


def test_probe_off_the_line(first_zero):
    report = probe_zero(0.75, first_zero)
    assert math.hypot(report.residual_31, report.residual_32) > 1e-2
    assert report.coeffs.det > 0
    assert abs(report.zeta2s) > 1e-3
    assert abs(report.B - report.zeta2s.re) < 1e-7
    assert abs(report.A + report.zeta2s.im) < 1e-7
    assert report.regime_note is None


def test_probe_negative_control():
    assert probe_zero(0.5, 10.0).residual_31 > 0.01


@pytest.mark.parametrize("sigma,t", [(1.5, 10.0), (0.0, 10.0), (0.5, 0.0)])
def test_probe_domain(sigma, t):
    with pytest.raises(DomainError):
        probe_zero(sigma, t)
