"""
Zeta Service
Evaluates the Riemann zeta function in three regimes, the Dirichlet
eta function, a truncated Euler product, Hardy's Z function and a
sign-change scanner for zeros on the critical line
"""

import logging
import math
from typing import List, Tuple

import numpy as np

from zetakit.errors import (
    ConditioningError,
    DomainError,
    RegimeError,
    UndefinedPointError,
)
from zetakit.models import Regime
from zetakit.schemas import ZERO_RESIDUAL_LIMIT, ComplexValue, EvalResult, ZeroRecord
from zetakit.services.arith import primes_up_to
from zetakit.services.series import (
    acceleration_bound,
    acceleration_degree,
    alternating_sum,
    check_tolerance,
    dirichlet_tail,
    em_cutoff,
)
from zetakit.services.special import (
    as_complex,
    c_exp,
    c_gamma,
    c_sin,
    riemann_siegel_theta,
)
from zetakit.services.workers import parallel_map

logger = logging.getLogger(__name__)

POLE_TOLERANCE = 1e-8
PREFACTOR_TOLERANCE = 1e-6
TRIVIAL_ZERO_TOLERANCE = 1e-12
DIRICHLET_MARGIN = 1e-3
BISECTION_WIDTH = 1e-10
MAX_SCAN_STEP = 0.5
DEFAULT_MAX_TERMS = 2000

_LOG2 = math.log(2.0)
_LOG_PI = math.log(math.pi)


def _result(value: complex, terms: int, err: float, regime: Regime) -> EvalResult:
    return EvalResult(
        value=ComplexValue.from_complex(value),
        terms_used=terms,
        est_error=err,
        regime=regime,
    )


def _check_undefined(s: complex) -> None:
    if abs(s - 1) <= POLE_TOLERANCE:
        raise UndefinedPointError("zeta has a pole at s = 1", point=1 + 0j)
    if abs(s) <= POLE_TOLERANCE:
        raise UndefinedPointError("zeta is left undefined at s = 0", point=0j)


# Dirichlet regime
def dirichlet_partial(s, n_terms: int) -> EvalResult:
    """
    Plain partial sum of n^(-s) for n <= n_terms

    est_error is the integral tail bound N^(1-sigma)/(sigma-1).
    """
    s = as_complex(s)
    if s.real <= 1:
        raise RegimeError(f"Dirichlet series needs Re(s) > 1, got {s}")
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    value = np.sum(np.exp(-s * np.log(n)))
    bound = n_terms ** (1 - s.real) / (s.real - 1)
    return _result(value, n_terms, bound, Regime.DIRICHLET)


def zeta_dirichlet(s, tol: float = 1e-10) -> EvalResult:
    """
    zeta(s) for Re(s) >= 1 + 1e-3

    Direct sum up to a cutoff plus an Euler-Maclaurin tail.
    """
    s = as_complex(s)
    check_tolerance(tol)
    if s.real < 1 + DIRICHLET_MARGIN:
        raise RegimeError(f"Dirichlet regime needs Re(s) >= {1 + DIRICHLET_MARGIN}, got {s}")

    cutoff = em_cutoff(s)
    n = np.arange(1, cutoff, dtype=np.float64)
    head = np.sum(np.exp(-s * np.log(n)))
    tail, err, used = dirichlet_tail(s, cutoff, tol)
    return _result(head + tail, cutoff - 1 + used, err, Regime.DIRICHLET)


# Eta regime
def eta(s, n_terms: int) -> Tuple[complex, float]:
    """
    Accelerated eta(s) = sum (-1)^(k-1) k^(-s) of degree n_terms

    Returns (value, remainder bound). Needs Re(s) > 0.
    """
    s = as_complex(s)
    if s.real <= 0:
        raise RegimeError(f"eta series needs Re(s) > 0, got {s}")
    k = np.arange(1, n_terms + 1, dtype=np.float64)
    value = alternating_sum(np.exp(-s * np.log(k)), accelerate=True)
    return complex(value), acceleration_bound(s.real, s.imag, n_terms)


def _prefactor(s: complex) -> complex:
    return 1 - c_exp((1 - s) * _LOG2)


def zeta_eta(s, tol: float = 1e-10, max_terms: int = DEFAULT_MAX_TERMS) -> EvalResult:
    """
    zeta(s) = eta(s) / (1 - 2^(1-s)) for Re(s) > 0

    Raises UndefinedPointError at s = 1 and ConditioningError near the other
    zeros 1 + 2 pi i k / ln 2 of the prefactor.
    """
    s = as_complex(s)
    check_tolerance(tol)
    if s.real <= 0:
        raise RegimeError(f"eta regime needs Re(s) > 0, got {s}")
    _check_undefined(s)

    k = round(s.imag * _LOG2 / (2 * math.pi))
    if k != 0 and abs(s - complex(1, 2 * math.pi * k / _LOG2)) <= PREFACTOR_TOLERANCE:
        raise ConditioningError(f"1 - 2^(1-s) vanishes near s = {s}")

    degree = acceleration_degree(s.real, s.imag, tol, max_terms)
    value, bound = eta(s, degree)
    prefactor = _prefactor(s)
    return _result(value / prefactor, degree, bound / abs(prefactor), Regime.ETA)


# Functional-equation regime
def zeta_functional(s, tol: float = 1e-10, max_terms: int = DEFAULT_MAX_TERMS) -> EvalResult:
    """
    zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s) for Re(s) <= 0

    Negative even integers within 1e-12 return an exact 0.
    """
    s = as_complex(s)
    check_tolerance(tol)
    if s.real > 0:
        raise RegimeError(f"functional regime needs Re(s) <= 0, got {s}")
    _check_undefined(s)

    k = round(s.real)
    if (
        k < 0
        and k % 2 == 0
        and abs(s.imag) <= TRIVIAL_ZERO_TOLERANCE
        and abs(s.real - k) <= TRIVIAL_ZERO_TOLERANCE
    ):
        return _result(0j, 0, 0.0, Regime.FUNCTIONAL)

    mirror = 1 - s
    if mirror.real >= 1 + DIRICHLET_MARGIN:
        inner = zeta_dirichlet(mirror, tol)
    else:
        inner = zeta_eta(mirror, tol, max_terms)

    factor = (
        c_exp(s * _LOG2)
        * c_exp((s - 1) * _LOG_PI)
        * c_sin(0.5 * math.pi * s)
        * c_gamma(mirror)
    )
    return _result(
        factor * inner.as_complex(),
        inner.terms_used,
        abs(factor) * inner.est_error,
        Regime.FUNCTIONAL,
    )


def select_regime(s) -> Regime:
    s = as_complex(s)
    if s.real > 1 + DIRICHLET_MARGIN:
        return Regime.DIRICHLET
    if s.real > 0:
        return Regime.ETA
    return Regime.FUNCTIONAL


def zeta(s, tol: float = 1e-10, max_terms: int = DEFAULT_MAX_TERMS) -> EvalResult:
    """
    Riemann zeta function on the whole plane except s = 0 and s = 1

    Args:
        s: complex argument
        tol: target absolute error, at least 1e-12
        max_terms: cap on the acceleration degree

    Returns:
        EvalResult carrying the value, terms used, error estimate and regime
    """
    s = as_complex(s)
    _check_undefined(s)
    regime = select_regime(s)
    logger.debug(f"zeta({s}) via {regime.value} regime")
    if regime is Regime.DIRICHLET:
        return zeta_dirichlet(s, tol)
    if regime is Regime.ETA:
        return zeta_eta(s, tol, max_terms)
    return zeta_functional(s, tol, max_terms)


def euler_product(s, prime_limit: int) -> complex:
    """prod_{p <= prime_limit} 1 / (1 - p^(-s)) for Re(s) > 1"""
    s = as_complex(s)
    if s.real <= 1:
        raise RegimeError(f"Euler product needs Re(s) > 1, got {s}")
    if prime_limit < 2:
        raise DomainError(f"prime_limit must be >= 2, got {prime_limit}")
    p = np.asarray(primes_up_to(prime_limit), dtype=np.float64)
    return complex(np.prod(1.0 / (1.0 - np.exp(-s * np.log(p)))))


# Critical line
def hardy_z(t: float, tol: float = 1e-10, max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """
    Real-valued Z(t) = exp(i theta(t)) zeta(1/2 + it)

    Raises ConditioningError if the rotated value keeps an imaginary part
    larger than the error budget.
    """
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"hardy_z needs t >= 0, got {t}")
    res = zeta(complex(0.5, t), tol, max_terms)
    value = res.as_complex()
    rotated = c_exp(1j * riemann_siegel_theta(t)) * value
    allowed = 10 * max(tol, res.est_error) + 1e-12 * (1 + abs(value))
    if abs(rotated.imag) > allowed:
        raise ConditioningError(
            f"rotation left imaginary part {rotated.imag:.3e} at t={t} (allowed {allowed:.1e})"
        )
    return rotated.real


def scan_grid(t_min: float, t_max: float, step: float) -> List[float]:
    """Points t_min + k*step up to t_max, with t_max itself always included"""
    count = math.floor((t_max - t_min) / step + 1e-9)
    grid = [t_min + k * step for k in range(count + 1)]
    if grid[-1] < t_max - 1e-12:
        grid.append(t_max)
    return grid


def _bisect(bracket: Tuple[float, float, float], tol: float, max_terms: int) -> float:
    a, b, za = bracket
    while b - a >= BISECTION_WIDTH:
        mid = 0.5 * (a + b)
        zm = hardy_z(mid, tol, max_terms)
        if zm == 0:
            return mid
        if (zm > 0) == (za > 0):
            a, za = mid, zm
        else:
            b = mid
    return 0.5 * (a + b)


def find_zeros(
    t_min: float,
    t_max: float,
    step: float,
    tol: float = 1e-10,
    jobs: int = 1,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> List[ZeroRecord]:
    """
    Zeros of zeta on the critical line located by sign changes of Z(t)

    Each bracket is bisected to width 1e-10. Results are sorted by t and
    identical for any job count.
    """
    if not (0 <= t_min < t_max) or not math.isfinite(t_max):
        raise DomainError(f"invalid scan range [{t_min}, {t_max}]")
    if not (0 < step <= MAX_SCAN_STEP):
        raise DomainError(f"scan step must lie in (0, {MAX_SCAN_STEP}], got {step}")
    check_tolerance(tol)

    grid = scan_grid(t_min, t_max, step)
    logger.info(f"Scanning Z(t) on [{t_min}, {t_max}] at {len(grid)} points with {jobs} job(s)")
    try:
        values = parallel_map(lambda t: hardy_z(t, tol, max_terms), grid, jobs)
    except ConditioningError as e:
        logger.error(f"Z(t) scan on [{t_min}, {t_max}] failed: {e.detail}")
        raise

    exact: List[float] = [t for t, z in zip(grid, values) if z == 0]
    brackets = [
        (a, b, za)
        for (a, za), (b, zb) in zip(zip(grid, values), zip(grid[1:], values[1:]))
        if za * zb < 0
    ]
    refined = parallel_map(lambda br: _bisect(br, tol, max_terms), brackets, jobs)

    records: List[ZeroRecord] = []
    for t in sorted(set(exact) | set(refined)):
        if t <= 0:
            continue
        residual = abs(zeta(complex(0.5, t), tol, max_terms).as_complex())
        if residual >= ZERO_RESIDUAL_LIMIT:
            logger.warning(f"Discarding candidate zero t={t}: residual {residual:.2e}")
            continue
        records.append(ZeroRecord(index=len(records) + 1, t=t, residual=residual))

    logger.info(f"Found {len(records)} zero(s) in [{t_min}, {t_max}]")
    return records
