"""
Identity Service
Numerical harness for the chain of series identities built on the eta
function: rotated alternating sums, the two-index mrzf summand and its
double-sum swap, beta-weighted series, the A/B linear system and its
determinant
"""

import logging
import math
from functools import lru_cache
from itertools import chain
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from zetakit.errors import (
    ConditioningError,
    DomainError,
    RangeError,
    RegimeError,
    VerificationFailure,
)
from zetakit.models import SeriesKind
from zetakit.schemas import (
    INT64_MAX,
    ABValues,
    BetaSeriesParts,
    ComplexValue,
    DetGridSummary,
    LinearCoeffs,
    ProbeReport,
    SeriesPartial,
    SwapReport,
    SystemResiduals,
)
from zetakit.services.arith import SIEVE_LIMIT, liouville, natural, shared_sieve
from zetakit.services.series import (
    MIN_TOLERANCE,
    acceleration_bound,
    alternating_sum,
    check_tolerance,
    dirichlet_tail,
    em_cutoff,
)
from zetakit.services.special import c_exp
from zetakit.services.workers import parallel_map
from zetakit.services.zeta import DEFAULT_MAX_TERMS, zeta

logger = logging.getLogger(__name__)

DEFAULT_PHI_SAMPLES = (0.0, math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2)
DEFAULT_M_SAMPLES = (1, 2, 3, 4, 5, 6, 8, 9, 10, 12)
INNER_SUM_TOLERANCE = 1e-12
_BLOCK_TERMS = 4_000_000
_LOG2 = math.log(2.0)

Summand = Callable[[np.ndarray], np.ndarray]


# Two-index summand
def mrzf(a: int, b: int, t: float, sigma: float) -> float:
    """(-1)^(b+1) (-1)^Omega(a) sin(t ln(ab)) / (ab)^sigma"""
    a, b = natural(a, "a"), natural(b, "b")
    n = a * b
    if n > INT64_MAX:
        raise RangeError(f"a*b = {n} exceeds the 64-bit range")
    sign = 1 if b % 2 else -1
    return sign * liouville(a) * math.sin(t * math.log(n)) / n ** sigma


@lru_cache(maxsize=4)
def _liouville_table(size: int) -> np.ndarray:
    omega = shared_sieve(size).big_omega_table()
    table = np.where(omega % 2 == 1, -1.0, 1.0)
    table.flags.writeable = False
    return table


def liouville_table(limit: int) -> np.ndarray:
    """(-1)^Omega(n) as floats for 0 <= n <= at least `limit`"""
    if limit > SIEVE_LIMIT:
        raise RangeError(f"Liouville table limited to {SIEVE_LIMIT}, got {limit}")
    size = min(SIEVE_LIMIT, max(1024, 1 << (max(limit, 2) - 1).bit_length()))
    return _liouville_table(size)


def mrzf_terms(m: np.ndarray, l: np.ndarray, t: float, sigma: float) -> np.ndarray:
    """Vectorized mrzf over paired index arrays"""
    m = np.asarray(m, dtype=np.int64)
    l = np.asarray(l, dtype=np.int64)
    if m.size == 0:
        return np.zeros(0)
    if int(m.min()) < 1 or int(l.min()) < 1:
        raise DomainError("mrzf indices must be natural numbers")
    if int(m.max()) * int(l.max()) > INT64_MAX:
        raise RangeError("m*l exceeds the 64-bit range")
    log_n = np.log((m * l).astype(np.float64))
    lam = liouville_table(int(m.max()))[m]
    sign = np.where(l % 2 == 1, 1.0, -1.0)
    return lam * sign * np.sin(t * log_n) * np.exp(-sigma * log_n)


def _rectangle(M: int, L: int) -> Tuple[np.ndarray, np.ndarray]:
    m, l = np.meshgrid(np.arange(1, M + 1), np.arange(1, L + 1), indexing="ij")
    return m.ravel(), l.ravel()


def _row_blocks(M: int, L: int, t: float, sigma: float) -> Iterator[np.ndarray]:
    rows = max(1, _BLOCK_TERMS // L)
    for start in range(1, M + 1, rows):
        stop = min(M, start + rows - 1)
        m, l = np.meshgrid(np.arange(start, stop + 1), np.arange(1, L + 1), indexing="ij")
        yield mrzf_terms(m.ravel(), l.ravel(), t, sigma)


def double_sum_lhs(M: int, L: int, t: float, sigma: float) -> float:
    """Sum of mrzf(m, l) over the rectangle m <= M, l <= L"""
    M, L = natural(M, "M"), natural(L, "L")
    if M * L > INT64_MAX:
        raise RangeError(f"M*L = {M * L} exceeds the 64-bit range")

    return math.fsum(chain.from_iterable(_row_blocks(M, L, t, sigma)))


def divisor_pairs(N: int) -> Tuple[np.ndarray, np.ndarray]:
    """All (m, l) with m*l <= N, grouped by m"""
    m = np.arange(1, N + 1, dtype=np.int64)
    counts = N // m
    starts = np.cumsum(counts) - counts
    m_arr = np.repeat(m, counts)
    l_arr = np.arange(int(counts.sum()), dtype=np.int64) - np.repeat(starts, counts) + 1
    return m_arr, l_arr


def beta_array(N: int) -> np.ndarray:
    """Closed-form beta(n) for n = 1..N"""
    b = np.zeros(N + 1)
    k = np.arange(1, math.isqrt(N) + 1)
    b[k * k] = 1.0
    k = np.arange(1, math.isqrt(N // 2) + 1)
    b[2 * k * k] = -2.0
    return b[1:]


def divisor_inner_sums(N: int, t: float, sigma: float) -> np.ndarray:
    """sum_{m | n} mrzf(m, n/m) for every n <= N"""
    N = natural(N, "N")
    m, l = divisor_pairs(N)
    terms = mrzf_terms(m, l, t, sigma)
    return np.bincount(m * l, weights=terms, minlength=N + 1)[1:]


def double_sum_rhs(N: int, t: float, sigma: float) -> float:
    """
    Sum over n <= N of the divisor sums of mrzf(m, n/m)

    Each inner sum is checked against beta(n) sin(t ln n) / n^sigma.
    """
    N = natural(N, "N")
    m, l = divisor_pairs(N)
    terms = mrzf_terms(m, l, t, sigma)

    inner = np.bincount(m * l, weights=terms, minlength=N + 1)[1:]
    scale = np.bincount(m * l, weights=np.abs(terms), minlength=N + 1)[1:]
    log_n = np.log(np.arange(1, N + 1, dtype=np.float64))
    expected = beta_array(N) * np.sin(t * log_n) * np.exp(-sigma * log_n)
    drift = np.abs(inner - expected)
    worst = float(np.max(drift))
    # tolerance is relative to the magnitude of the terms summed for each n
    if np.any(drift > INNER_SUM_TOLERANCE * np.maximum(1.0, scale)):
        logger.error(f"Inner divisor sums drift from the beta reduction by {worst:.2e}")
        raise VerificationFailure(f"inner divisor sums off by {worst:.2e} for N={N}")

    return math.fsum(terms)


def rearrangement_sums(M: int, L: int, t: float, sigma: float) -> Tuple[float, float, float]:
    """(by rows, by columns, by divisor diagonals) over the same rectangle"""
    M, L = natural(M, "M"), natural(L, "L")
    m, l = _rectangle(M, L)
    terms = mrzf_terms(m, l, t, sigma)
    grid = terms.reshape(M, L)
    by_rows = math.fsum(grid.sum(axis=1))
    by_columns = math.fsum(grid.sum(axis=0))
    by_diagonals = math.fsum(np.bincount(m * l, weights=terms))
    return by_rows, by_columns, by_diagonals


def _swap_report(T: int, t: float, sigma: float) -> SwapReport:
    m, l = _rectangle(T, T)
    terms = mrzf_terms(m, l, t, sigma)
    lhs = math.fsum(terms)
    # same pairs visited along divisor diagonals n = m*l
    rhs = math.fsum(terms[np.lexsort((m, m * l))])
    diagonal = double_sum_rhs(T * T, t, sigma)
    logger.debug(f"Swap at T={T}: lhs={lhs!r} diagonal={diagonal!r}")
    return SwapReport(
        sigma=sigma,
        t=t,
        truncation=T,
        lhs=lhs,
        rhs=rhs,
        gap=abs(lhs - rhs),
        diagonal_rhs=diagonal,
        truncation_gap=abs(lhs - diagonal),
    )


def swap_discrepancy(
    t: float, sigma: float, truncations: Sequence[int], jobs: int = 1
) -> List[SwapReport]:
    """
    Row-major rectangle sums against divisor-diagonal sums per truncation

    Args:
        t: imaginary part
        sigma: real part; only sigma > 1 is absolutely convergent
        truncations: strictly increasing rectangle sizes T
        jobs: worker threads

    Returns:
        One SwapReport per truncation in the given order
    """
    truncations = [natural(T, "truncation") for T in truncations]
    if not truncations:
        raise DomainError("at least one truncation is required")
    if any(b <= a for a, b in zip(truncations, truncations[1:])):
        raise DomainError(f"truncations must be strictly increasing, got {truncations}")
    if sigma <= 1:
        logger.info(f"sigma={sigma} <= 1: swap gaps are reported without a convergence claim")

    return parallel_map(lambda T: _swap_report(T, t, sigma), truncations, jobs)


# Alternating eta-type partial sums
def _alternating_partial(
    sigma: float,
    t: float,
    n_terms: int,
    accelerate: bool,
    summand: Summand,
    scale: float = 1.0,
) -> SeriesPartial:
    if sigma <= 0:
        raise DomainError(f"alternating sums need sigma > 0, got {sigma}")
    n_terms = natural(n_terms, "n_terms")

    count = n_terms if accelerate else n_terms + 1
    terms = summand(np.arange(1, count + 1, dtype=np.float64))
    if accelerate:
        value = alternating_sum(terms, accelerate=True)
        est_error = scale * acceleration_bound(sigma, t, n_terms)
    else:
        value = alternating_sum(terms[:n_terms], accelerate=False)
        est_error = abs(float(terms[n_terms]))
    return SeriesPartial(
        value=float(value), n_terms=n_terms, accelerated=accelerate, est_error=est_error
    )


def eta_partial_cos(sigma: float, t: float, n_terms: int, accelerate: bool = True) -> SeriesPartial:
    """sum (-1)^(n+1) cos(t ln n) / n^sigma, i.e. Re eta(sigma + it)"""
    def summand(n: np.ndarray) -> np.ndarray:
        log_n = np.log(n)
        return np.cos(t * log_n) * np.exp(-sigma * log_n)

    return _alternating_partial(sigma, t, n_terms, accelerate, summand)


def eta_partial_sin(sigma: float, t: float, n_terms: int, accelerate: bool = True) -> SeriesPartial:
    """sum (-1)^(n+1) sin(t ln n) / n^sigma, i.e. -Im eta(sigma + it)"""
    def summand(n: np.ndarray) -> np.ndarray:
        log_n = np.log(n)
        return np.sin(t * log_n) * np.exp(-sigma * log_n)

    return _alternating_partial(sigma, t, n_terms, accelerate, summand)


def rotated_partial(
    sigma: float, t: float, phi: float, n_terms: int, accelerate: bool = True
) -> SeriesPartial:
    """sum (-1)^(n+1) sin(t ln n + phi) / n^sigma from the combined summand"""
    def summand(n: np.ndarray) -> np.ndarray:
        log_n = np.log(n)
        return np.sin(t * log_n + phi) * np.exp(-sigma * log_n)

    return _alternating_partial(sigma, t, n_terms, accelerate, summand)


def _scaled_partial(m: int, sigma: float, t: float, n_terms: int, accelerate: bool, trig) -> SeriesPartial:
    m = natural(m, "m")

    def summand(n: np.ndarray) -> np.ndarray:
        log_mn = np.log(m * n)
        return trig(t * log_mn) * np.exp(-sigma * log_mn)

    return _alternating_partial(sigma, t, n_terms, accelerate, summand, scale=m ** -sigma)


def f1(m: int, sigma: float, t: float, n_terms: int, accelerate: bool = True) -> SeriesPartial:
    """sum_n (-1)^(n+1) sin(t ln(mn)) / (mn)^sigma"""
    return _scaled_partial(m, sigma, t, n_terms, accelerate, np.sin)


def f2(m: int, sigma: float, t: float, n_terms: int, accelerate: bool = True) -> SeriesPartial:
    """sum_n (-1)^(n+1) cos(t ln(mn)) / (mn)^sigma"""
    return _scaled_partial(m, sigma, t, n_terms, accelerate, np.cos)


# Beta-weighted series and the A/B system
def _trig(kind: SeriesKind):
    return np.sin if SeriesKind(kind) is SeriesKind.SINE else np.cos


def beta_series(
    sigma: float,
    t: float,
    N: int,
    kind: SeriesKind,
    tail_correction: bool = False,
) -> BetaSeriesParts:
    """
    Square and twice-square sub-series of the beta-weighted sum

    square_part = sum trig(t ln n^2) / (n^2)^sigma and
    twice_square_part = sum 2 trig(t ln 2n^2) / (2n^2)^sigma over n <= N;
    total = square_part - twice_square_part. With tail_correction both
    receive their Euler-Maclaurin tails beyond the direct range.
    """
    if sigma <= 0.5:
        raise RegimeError(f"beta series need sigma > 1/2, got {sigma}")
    N = natural(N, "N")
    kind = SeriesKind(kind)
    trig = _trig(kind)
    s2 = complex(2 * sigma, 2 * t)

    head_end = max(N + 1, em_cutoff(s2)) if tail_correction else N + 1
    n = np.arange(1, head_end, dtype=np.float64)
    log_sq = np.log(n * n)
    log_tw = np.log(2 * n * n)
    square = math.fsum(trig(t * log_sq) * np.exp(-sigma * log_sq))
    twice = math.fsum(2 * trig(t * log_tw) * np.exp(-sigma * log_tw))

    twice_weight = 1 + 2 ** (1 - sigma)
    if tail_correction:
        tail, err, _ = dirichlet_tail(s2, head_end, MIN_TOLERANCE)
        tail_twice = c_exp((1 - complex(sigma, t)) * _LOG2) * tail
        if kind is SeriesKind.SINE:
            square -= tail.imag
            twice -= tail_twice.imag
        else:
            square += tail.real
            twice += tail_twice.real
        est_error = err * twice_weight
    else:
        est_error = N ** (1 - 2 * sigma) / (2 * sigma - 1) * twice_weight

    return BetaSeriesParts(
        square_part=square,
        twice_square_part=twice,
        total=square - twice,
        n_terms=head_end - 1,
        est_error=est_error,
    )


def beta_weighted_sum(sigma: float, t: float, bound: int, kind: SeriesKind) -> float:
    """sum_{n <= bound} beta(n) trig(t ln n) / n^sigma from the closed form"""
    bound = natural(bound, "bound")
    if bound > SIEVE_LIMIT:
        raise RangeError(f"bound limited to {SIEVE_LIMIT}, got {bound}")
    b = beta_array(bound)
    idx = np.nonzero(b)[0]
    log_n = np.log(idx + 1.0)
    return math.fsum(b[idx] * _trig(kind)(t * log_n) * np.exp(-sigma * log_n))


def ab_values(sigma: float, t: float, tol: float = 1e-10) -> ABValues:
    """
    A = sum sin(t ln n^2) / (n^2)^sigma and B = sum cos(t ln n^2) / (n^2)^sigma

    B - iA equals zeta(2 sigma + 2it).
    """
    if sigma <= 0.5:
        raise RegimeError(f"A and B need sigma > 1/2, got {sigma}")
    check_tolerance(tol)
    s2 = complex(2 * sigma, 2 * t)
    cutoff = em_cutoff(s2)
    n = np.arange(1, cutoff, dtype=np.float64)
    log_sq = np.log(n * n)
    weight = np.exp(-sigma * log_sq)
    tail, err, used = dirichlet_tail(s2, cutoff, tol)
    return ABValues(
        A=math.fsum(np.sin(t * log_sq) * weight) - tail.imag,
        B=math.fsum(np.cos(t * log_sq) * weight) + tail.real,
        terms_used=cutoff - 1 + used,
        est_error=err,
    )


def _check_open_strip(sigma: float) -> None:
    if not 0.5 < sigma < 1:
        raise DomainError(f"sigma must lie in (1/2, 1), got {sigma}")


def linear_coeffs(sigma: float, t: float) -> LinearCoeffs:
    _check_open_strip(sigma)
    c = 2 ** (1 - sigma)
    p = 1 - c * math.cos(t * _LOG2)
    q = -c * math.sin(t * _LOG2)
    return LinearCoeffs(sigma=sigma, t=t, p=p, q=q, r=-q, s_coef=p, det=p * p + q * q)


def amgm_margin(sigma: float, t: float) -> float:
    """1 + 2^(2-2 sigma) - 2^(2-sigma) cos(t ln 2), equal to p^2 + q^2"""
    _check_open_strip(sigma)
    return 1 + 2 ** (2 - 2 * sigma) - 2 ** (2 - sigma) * math.cos(t * _LOG2)


def det_grid(sigmas: Sequence[float], ts: Sequence[float]) -> DetGridSummary:
    """Minimum of det over a (sigma, t) grid and its worst gap to amgm_margin"""
    sig = np.asarray(sigmas, dtype=np.float64)
    tt = np.asarray(ts, dtype=np.float64)
    if sig.size == 0 or tt.size == 0:
        raise DomainError("det grid needs at least one sigma and one t")
    if np.any(sig <= 0.5) or np.any(sig >= 1):
        raise DomainError("grid sigmas must lie in (1/2, 1)")

    S, T = np.meshgrid(sig, tt, indexing="ij")
    c = 2 ** (1 - S)
    p = 1 - c * np.cos(T * _LOG2)
    q = -c * np.sin(T * _LOG2)
    det = p * p + q * q
    margin = 1 + 2 ** (2 - 2 * S) - 2 ** (2 - S) * np.cos(T * _LOG2)

    i, j = np.unravel_index(np.argmin(det), det.shape)
    return DetGridSummary(
        min_det=float(det[i, j]),
        sigma_at_min=float(sig[i]),
        t_at_min=float(tt[j]),
        max_margin_gap=float(np.max(np.abs(det - margin))),
        points=int(det.size),
    )


def solve_2x2(coeffs: LinearCoeffs, A: float, B: float) -> SystemResiduals:
    """Residuals |pA + qB|, |rA + sB| and the inverse-matrix 2-norm"""
    matrix = np.array([[coeffs.p, coeffs.q], [coeffs.r, coeffs.s_coef]])
    kappa: Optional[float] = None
    if coeffs.det != 0:
        kappa = float(np.linalg.norm(np.linalg.inv(matrix), 2))
    return SystemResiduals(
        residual1=abs(coeffs.p * A + coeffs.q * B),
        residual2=abs(coeffs.r * A + coeffs.s_coef * B),
        det=coeffs.det,
        kappa=kappa,
    )


def probe_zero(
    sigma: float,
    t: float,
    n_terms: int = DEFAULT_MAX_TERMS,
    phi_samples: Optional[Sequence[float]] = None,
    m_samples: Optional[Sequence[int]] = None,
    tol: float = 1e-10,
) -> ProbeReport:
    """
    Evaluate every link of the identity chain at s = sigma + it

    Reports values only. A/B, the coefficients and the system residuals
    are left empty for sigma <= 1/2, where their series diverge.
    """
    if not 0 < sigma < 1:
        raise DomainError(f"probe needs sigma in (0, 1), got {sigma}")
    if not t > 0:
        raise DomainError(f"probe needs t > 0, got {t}")
    phis = list(DEFAULT_PHI_SAMPLES if phi_samples is None else phi_samples)
    ms = list(DEFAULT_M_SAMPLES if m_samples is None else m_samples)

    logger.info(f"Probing sigma={sigma}, t={t} with {n_terms} accelerated terms")
    report = ProbeReport(
        sigma=sigma,
        t=t,
        n_terms=n_terms,
        residual_31=abs(eta_partial_cos(sigma, t, n_terms).value),
        residual_32=abs(eta_partial_sin(sigma, t, n_terms).value),
        residual_33=[(phi, abs(rotated_partial(sigma, t, phi, n_terms).value)) for phi in phis],
        f1_samples=[(m, f1(m, sigma, t, n_terms).value) for m in ms],
        f2_samples=[(m, f2(m, sigma, t, n_terms).value) for m in ms],
    )

    s2 = complex(2 * sigma, 2 * t)
    try:
        report.zeta2s = ComplexValue.from_complex(zeta(s2, tol, n_terms).as_complex())
    except ConditioningError as e:
        report.regime_note = f"zeta(2s) not evaluated: {e.detail}"

    if sigma > 0.5:
        ab = ab_values(sigma, t, tol)
        coeffs = linear_coeffs(sigma, t)
        system = solve_2x2(coeffs, ab.A, ab.B)
        report.A = ab.A
        report.B = ab.B
        report.coeffs = coeffs
        report.system_residuals = (system.residual1, system.residual2)
    elif report.regime_note is None:
        report.regime_note = (
            "sigma <= 1/2: A/B series diverge; zeta(2s) evaluated through the eta regime"
        )
    return report
