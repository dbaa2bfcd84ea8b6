"""
Verification Service
Property suites over the arith, zeta and identities services; each check
reports pass/fail with the measured margin
"""

import logging
import math
from typing import Callable, List

import numpy as np

from zetakit.config import RunConfig
from zetakit.errors import ZetaKitError
from zetakit.models import SeriesKind, Suite
from zetakit.schemas import CheckResult, SuiteReport
from zetakit.services import arith, identities, zeta
from zetakit.services.special import c_exp, c_gamma, c_sin

logger = logging.getLogger(__name__)

ORACLE_LIMIT = 10**5
PAIR_LIMIT = 10**4
RANDOM_PAIRS = 2000
QUASI_LIMIT = 500
QUASI_PRODUCT_LIMIT = 10**6

ZETA_2 = math.pi**2 / 6
ZETA_4 = math.pi**4 / 90
FIRST_ZERO = 14.134725141734695

Check = Callable[[RunConfig, np.random.Generator], CheckResult]


def _result(name: str, theorem: str, passed: bool, margin=None, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        theorem=theorem,
        passed=bool(passed),
        margin=None if margin is None else float(margin),
        detail=detail,
    )


# arith
def check_omega_additive(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    omega = arith.shared_sieve(PAIR_LIMIT).big_omega_table()
    failures = 0
    for a in range(1, PAIR_LIMIT + 1):
        b = np.arange(1, PAIR_LIMIT // a + 1)
        b = b[np.gcd(a, b) == 1]
        failures += int(np.count_nonzero(omega[a * b] != omega[a] + omega[b]))

    sampled = 0
    while sampled < RANDOM_PAIRS:
        a, b = (int(x) for x in rng.integers(1, PAIR_LIMIT + 1, size=2))
        if math.gcd(a, b) != 1:
            continue
        sampled += 1
        if arith.big_omega(a * b) != arith.big_omega(a) + arith.big_omega(b):
            failures += 1
    return _result(
        "omega_additive_coprime",
        "Omega(ab) = Omega(a) + Omega(b) for coprime a, b",
        failures == 0,
        failures,
        f"exhaustive a*b <= {PAIR_LIMIT} plus {RANDOM_PAIRS} random pairs",
    )


def check_liouville_multiplicative(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    omega = arith.shared_sieve(PAIR_LIMIT).big_omega_table()
    lam = np.where(omega % 2 == 1, -1, 1)
    failures = 0
    for a in range(1, PAIR_LIMIT + 1):
        b = np.arange(1, PAIR_LIMIT // a + 1)
        failures += int(np.count_nonzero(lam[a * b] != lam[a] * lam[b]))
    return _result(
        "liouville_multiplicative",
        "lambda(ab) = lambda(a) lambda(b)",
        failures == 0,
        failures,
        f"all a*b <= {PAIR_LIMIT}",
    )


def check_prime_powers(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    failures = []
    for p in arith.primes_up_to(100)[1:]:
        for k in range(13):
            expected = 0 if k % 2 else 1
            pairs = [(p, k)] if k else []
            values = [arith.beta_from_factorization(pairs)]
            if p**k <= arith.INT64_MAX:
                values.append(arith.beta_divisor_sum(p**k))
            if any(v != expected for v in values):
                failures.append(f"{p}^{k}")
    return _result(
        "beta_odd_prime_powers",
        "beta(p^k) = 1 for even k, 0 for odd k, p odd prime",
        not failures,
        len(failures),
        ", ".join(failures[:10]),
    )


def check_quasi_multiplicative(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    sieve = arith.shared_sieve(QUASI_PRODUCT_LIMIT)
    beta_small = {m: arith.beta_divisor_sum(m, sieve) for m in range(1, QUASI_LIMIT + 1, 2)}
    failures, cases = 0, 0
    for p in arith.primes_up_to(QUASI_LIMIT)[1:]:
        power = p
        while power <= QUASI_PRODUCT_LIMIT:
            beta_power = arith.beta_divisor_sum(power, sieve)
            for m, beta_m in beta_small.items():
                if m % p == 0 or power * m > QUASI_PRODUCT_LIMIT:
                    continue
                cases += 1
                if arith.beta_divisor_sum(power * m, sieve) != beta_power * beta_m:
                    failures += 1
            power *= p
    return _result(
        "beta_quasi_multiplicative",
        "beta(p^a m) = beta(p^a) beta(m) for odd prime p not dividing odd m",
        failures == 0,
        failures,
        f"{cases} cases with p, m <= {QUASI_LIMIT}",
    )


def check_odd_arguments(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    sieve = arith.shared_sieve(ORACLE_LIMIT)
    failures = 0
    for n in range(1, ORACLE_LIMIT + 1, 2):
        expected = 1 if math.isqrt(n) ** 2 == n else 0
        if arith.beta_divisor_sum(n, sieve) != expected:
            failures += 1
    return _result(
        "beta_odd_arguments",
        "beta(n) = 1 on odd squares, 0 on other odd n",
        failures == 0,
        failures,
        f"odd n <= {ORACLE_LIMIT}",
    )


def check_beta_oracle(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    mismatches = [n for n, divsum, closed in arith.beta_table(ORACLE_LIMIT) if divsum != closed.value]
    return _result(
        "beta_closed_form_oracle",
        "divisor-sum beta equals the square / twice-square closed form",
        not mismatches,
        len(mismatches),
        f"n <= {ORACLE_LIMIT}" + (f"; first mismatch {mismatches[0]}" if mismatches else ""),
    )


# zeta
def check_zeta_values(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    tol = config.tolerance
    errors = [
        abs(zeta.zeta(2, 1e-12).as_complex() - ZETA_2),
        abs(zeta.zeta(4, 1e-12).as_complex() - ZETA_4),
        abs(zeta.zeta(-1, 1e-12).as_complex() + 1 / 12),
        abs(zeta.zeta(0.5, 1e-12).as_complex() + 1.4603545088095868),
    ]
    errors += [abs(zeta.zeta(-2 * k, tol).as_complex()) for k in range(1, 6)]
    worst = max(errors)
    return _result(
        "zeta_known_values",
        "zeta(2), zeta(4), zeta(-1), zeta(1/2) and trivial zeros",
        worst < 1e-9,
        worst,
    )


def check_regime_agreement(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(50):
        s = complex(rng.uniform(1.001, 1.002), rng.uniform(-30, 30))
        a = zeta.zeta_dirichlet(s, 1e-12)
        b = zeta.zeta_eta(s, 1e-12, config.max_terms)
        allowed = 1e-8 + a.est_error + b.est_error
        worst = max(worst, abs(a.as_complex() - b.as_complex()) / allowed)
    return _result(
        "regime_agreement",
        "Dirichlet and eta evaluations agree just right of Re(s) = 1",
        worst <= 1.0,
        worst,
        "margin is the worst disagreement relative to the allowed error",
    )


def check_functional_round_trip(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(50):
        s = complex(rng.uniform(0.05, 0.95), rng.uniform(-30, 30))
        lhs = zeta.zeta_eta(s, 1e-12, config.max_terms).as_complex()
        mirror = zeta.zeta_eta(1 - s, 1e-12, config.max_terms).as_complex()
        rhs = (
            c_exp(s * math.log(2))
            * c_exp((s - 1) * math.log(math.pi))
            * c_sin(math.pi * s / 2)
            * c_gamma(1 - s)
            * mirror
        )
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-3))
    return _result(
        "functional_equation_round_trip",
        "zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s) in the strip",
        worst < 1e-7,
        worst,
        "50 random points, relative error",
    )


def check_conjugate_symmetry(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(20):
        s = complex(rng.uniform(-3, 3), rng.uniform(0.5, 30))
        value = zeta.zeta(s, 1e-12, config.max_terms).as_complex()
        mirrored = zeta.zeta(s.conjugate(), 1e-12, config.max_terms).as_complex()
        worst = max(worst, abs(mirrored - value.conjugate()))
    return _result(
        "conjugate_symmetry",
        "zeta(conj s) = conj zeta(s)",
        worst < 1e-10,
        worst,
    )


def check_euler_product(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    errors = [abs(zeta.euler_product(2, limit) - ZETA_2) for limit in (10**2, 10**3, 10**4, 10**5)]
    decreasing = all(b < a for a, b in zip(errors, errors[1:]))
    return _result(
        "euler_product",
        "prod 1/(1 - p^-2) converges to zeta(2)",
        decreasing and errors[-1] < 1e-4,
        errors[-1],
        "errors " + ", ".join(f"{e:.2e}" for e in errors),
    )


def check_zero_scan(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    expected = (14.1347, 21.0220, 25.0109)
    records = zeta.find_zeros(0, 30, 0.1, 1e-10, config.workers(), config.max_terms)
    found = [r.t for r in records]
    ok = len(found) == 3 and all(abs(a - b) < 1e-3 for a, b in zip(found, expected))
    ok = ok and all(r.residual < 1e-6 for r in records)
    return _result(
        "critical_line_zeros",
        "three sign changes of Z(t) on [0, 30]",
        ok,
        max((r.residual for r in records), default=None),
        "t = " + ", ".join(f"{t:.6f}" for t in found),
    )


# identities
def check_rearrangement(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(5):
        t, sigma = rng.uniform(0, 30), rng.uniform(0.5, 2.5)
        sums = identities.rearrangement_sums(60, 45, t, sigma)
        worst = max(worst, max(sums) - min(sums))
    return _result(
        "finite_rearrangement",
        "rows, columns and divisor diagonals give one finite sum",
        worst <= 1e-12,
        worst,
    )


def check_inner_sums(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    log_n = np.log(np.arange(1, PAIR_LIMIT + 1, dtype=np.float64))
    beta = identities.beta_array(PAIR_LIMIT)
    for _ in range(10):
        t, sigma = rng.uniform(0, 50), rng.uniform(0.5, 2.0)
        inner = identities.divisor_inner_sums(PAIR_LIMIT, t, sigma)
        expected = beta * np.sin(t * log_n) * np.exp(-sigma * log_n)
        worst = max(worst, float(np.max(np.abs(inner - expected))))
    return _result(
        "inner_divisor_sums",
        "sum over m | n of mrzf(m, n/m) = beta(n) sin(t ln n) / n^sigma",
        worst <= 1e-12,
        worst,
        f"n <= {PAIR_LIMIT}, 10 random (t, sigma)",
    )


def check_rotation_scaling(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst_rot, worst_scale = 0.0, 0.0
    n = 400
    for _ in range(5):
        sigma, t, phi = rng.uniform(0.3, 1.5), rng.uniform(1, 40), rng.uniform(0, 2 * math.pi)
        direct = identities.rotated_partial(sigma, t, phi, n).value
        cos_part = identities.eta_partial_cos(sigma, t, n).value
        sin_part = identities.eta_partial_sin(sigma, t, n).value
        worst_rot = max(worst_rot, abs(direct - (math.sin(phi) * cos_part + math.cos(phi) * sin_part)))
        for m in (2, 3, 12):
            rotated = identities.rotated_partial(sigma, t, t * math.log(m), n).value
            worst_scale = max(worst_scale, abs(identities.f1(m, sigma, t, n).value - m ** -sigma * rotated))
    return _result(
        "rotation_and_scaling",
        "angle addition and the m^-sigma rotation of the eta sums",
        worst_rot <= 1e-10 and worst_scale <= 1e-12,
        max(worst_rot, worst_scale),
        f"rotation {worst_rot:.1e}, scaling {worst_scale:.1e}",
    )


def check_determinant(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    sigmas = np.round(0.51 + 0.01 * np.arange(49), 2)
    ts = np.round(0.01 * np.arange(5001), 2)
    summary = identities.det_grid(sigmas, ts)
    boundary = (1 - 2 ** (1 - summary.sigma_at_min)) ** 2
    ok = (
        summary.min_det > 0
        and summary.max_margin_gap <= 1e-12
        and abs(summary.min_det - boundary) <= 1e-15
    )
    return _result(
        "determinant_positive",
        "p^2 + q^2 = 1 + 2^(2-2 sigma) - 2^(2-sigma) cos(t ln 2) > 0 on (1/2, 1)",
        ok,
        summary.min_det,
        f"min at sigma={summary.sigma_at_min}, t={summary.t_at_min}; "
        f"max |det - margin| = {summary.max_margin_gap:.1e} over {summary.points} points",
    )


def check_zeta_2s(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for sigma in (0.6, 0.75, 0.9):
        for t in (1.0, 14.1347, 25.0):
            ab = identities.ab_values(sigma, t, 1e-12)
            target = zeta.zeta(complex(2 * sigma, 2 * t), 1e-12).as_complex()
            worst = max(worst, abs(complex(ab.B, -ab.A) - target))
    return _result(
        "zeta_2s_decomposition",
        "B - iA = zeta(2s)",
        worst < 1e-7,
        worst,
    )


def check_beta_system(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for sigma, t in ((0.6, 3.0), (0.75, FIRST_ZERO), (0.9, 25.0)):
        ab = identities.ab_values(sigma, t, 1e-12)
        c = identities.linear_coeffs(sigma, t)
        sine = identities.beta_series(sigma, t, 200, SeriesKind.SINE, tail_correction=True)
        cosine = identities.beta_series(sigma, t, 200, SeriesKind.COSINE, tail_correction=True)
        worst = max(
            worst,
            abs(sine.total - (c.p * ab.A + c.q * ab.B)),
            abs(cosine.total - (c.r * ab.A + c.s_coef * ab.B)),
        )
    return _result(
        "beta_series_linear_system",
        "beta-weighted sums equal pA + qB and rA + sB",
        worst < 1e-8,
        worst,
    )


def check_swap_absolute(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    reports = identities.swap_discrepancy(1.0, 2.0, [50, 100, 200, 400], config.workers())
    matched = max(r.gap for r in reports)
    final = reports[-1].truncation_gap
    return _result(
        "double_sum_swap",
        "rectangle and divisor-diagonal double sums agree for sigma > 1",
        matched == 0 and final < 1e-4,
        final,
        "truncation gaps " + ", ".join(f"T={r.truncation}: {r.truncation_gap:.2e}" for r in reports),
    )


def check_zero_residuals(config: RunConfig, rng: np.random.Generator) -> CheckResult:
    zeros = zeta.find_zeros(14.0, 14.5, 0.1, 1e-10, 1, config.max_terms)
    t = zeros[0].t if zeros else FIRST_ZERO
    at_zero = identities.probe_zero(0.5, t, config.max_terms)
    control = identities.probe_zero(0.5, 10.0, config.max_terms)
    values = [at_zero.residual_31, at_zero.residual_32]
    values += [r for _, r in at_zero.residual_33]
    values += [abs(v) for _, v in at_zero.f1_samples + at_zero.f2_samples]
    worst = max(values)
    return _result(
        "zero_residuals",
        "eta-based sums vanish at a zero and not at t = 10",
        worst < 1e-4 and control.residual_31 > 0.01,
        worst,
        f"t={t:.10f}; control residual {control.residual_31:.3f}",
    )


SUITES = {
    Suite.ARITH: [
        check_omega_additive,
        check_liouville_multiplicative,
        check_prime_powers,
        check_quasi_multiplicative,
        check_odd_arguments,
        check_beta_oracle,
    ],
    Suite.ZETA: [
        check_zeta_values,
        check_regime_agreement,
        check_functional_round_trip,
        check_conjugate_symmetry,
        check_euler_product,
        check_zero_scan,
    ],
    Suite.IDENTITIES: [
        check_rearrangement,
        check_inner_sums,
        check_rotation_scaling,
        check_determinant,
        check_zeta_2s,
        check_beta_system,
        check_swap_absolute,
        check_zero_residuals,
    ],
}


def _run_check(check: Check, config: RunConfig, rng: np.random.Generator) -> CheckResult:
    name = check.__name__.removeprefix("check_")
    try:
        return check(config, rng)
    except ZetaKitError as e:
        logger.error(f"Check {name} raised: {e.detail}")
        return _result(name, "", False, None, f"{type(e).__name__}: {e.detail}")


def run_suite(suite: Suite, config: RunConfig) -> List[SuiteReport]:
    """Run one suite, or all of them, with randomness seeded from config"""
    suite = Suite(suite)
    selected = list(SUITES) if suite is Suite.ALL else [suite]
    reports = []
    for name in selected:
        rng = np.random.default_rng(config.seed)
        checks = [_run_check(check, config, rng) for check in SUITES[name]]
        passed = all(c.passed for c in checks)
        logger.info(f"Suite {name.value}: {sum(c.passed for c in checks)}/{len(checks)} checks passed")
        reports.append(SuiteReport(suite=name.value, passed=passed, checks=checks))
    return reports
