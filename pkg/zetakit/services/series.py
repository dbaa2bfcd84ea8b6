"""
Series Kernels
Shared summation machinery: accelerated alternating sums with fixed
weights and the Euler-Maclaurin tail of a Dirichlet series
"""

import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.special import bernoulli, factorial, gammaln

from zetakit.errors import DomainError
from zetakit.services.special import c_log_gamma

logger = logging.getLogger(__name__)

CVZ_RATIO = 3.0 + math.sqrt(8.0)
_LOG_CVZ_RATIO = math.log(CVZ_RATIO)
EM_MAX_CORRECTIONS = 30
MIN_TOLERANCE = 1e-12


def check_tolerance(tol: float) -> float:
    if not (tol >= MIN_TOLERANCE and math.isfinite(tol)):
        raise DomainError(f"tolerance must be >= {MIN_TOLERANCE}, got {tol}")
    return tol


@lru_cache(maxsize=64)
def cvz_weights(n: int) -> np.ndarray:
    """
    Weights w_0 .. w_{n-1} of the degree-n accelerated alternating sum

    w_k = sum_{i > k} e_i / sum_i e_i with
    e_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), built in log space.
    The returned array is shared and read-only.
    """
    if n < 1:
        raise DomainError(f"acceleration degree must be >= 1, got {n}")
    i = np.arange(n + 1, dtype=np.float64)
    log_e = (
        math.log(n)
        + gammaln(n + i)
        - gammaln(n - i + 1)
        - gammaln(2 * i + 1)
        + i * math.log(4.0)
    )
    e = np.exp(log_e - log_e.max())
    tail = np.cumsum(e[::-1])[::-1]
    w = tail[1:] / tail[0]
    w.flags.writeable = False
    return w


def alternating_sum(terms: np.ndarray, accelerate: bool = True):
    """
    sum_k (-1)^k terms[k], optionally with the fixed acceleration weights

    With accelerate=False this is the plain partial sum of len(terms) terms.
    """
    n = len(terms)
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    if accelerate:
        return np.sum(signs * cvz_weights(n) * terms)
    return np.sum(signs * terms)


def acceleration_bound(sigma: float, t: float, n: int) -> float:
    """2 Gamma(sigma) / (|Gamma(sigma + it)| (3 + sqrt 8)^n), 0 on underflow"""
    if sigma <= 0:
        raise DomainError(f"acceleration bound needs sigma > 0, got {sigma}")
    log_bound = (
        math.log(2.0)
        + math.lgamma(sigma)
        - c_log_gamma(complex(sigma, t)).real
        - n * _LOG_CVZ_RATIO
    )
    return math.exp(log_bound) if log_bound > -745.0 else 0.0


def acceleration_degree(sigma: float, t: float, tol: float, max_terms: int) -> int:
    """Smallest degree whose remainder bound falls below tol, capped at max_terms"""
    digits = math.ceil(-math.log10(tol))
    base = math.ceil(1.31 * digits)
    log_scale = math.log(2.0) + math.lgamma(sigma) - c_log_gamma(complex(sigma, t)).real
    needed = math.ceil((log_scale - math.log(tol)) / _LOG_CVZ_RATIO)
    degree = max(base, needed, 1)
    if degree > max_terms:
        logger.warning(
            f"Acceleration degree {degree} for sigma={sigma}, t={t} capped at {max_terms}"
        )
        degree = max_terms
    return degree


@lru_cache(maxsize=1)
def _em_coefficients() -> np.ndarray:
    """B_2k / (2k)! for k = 1 .. EM_MAX_CORRECTIONS"""
    b = bernoulli(2 * EM_MAX_CORRECTIONS)
    k2 = np.arange(2, 2 * EM_MAX_CORRECTIONS + 1, 2)
    coeffs = b[k2] / factorial(k2, exact=False)
    coeffs.flags.writeable = False
    return coeffs


def em_cutoff(s: complex) -> int:
    """Direct-summation length that keeps the correction terms shrinking fast"""
    return int(abs(s)) + 10


def dirichlet_tail(s: complex, start: int, tol: float) -> Tuple[complex, float, int]:
    """
    Euler-Maclaurin value of sum_{n >= start} n^(-s)

    Returns (value, est_error, corrections_used); est_error is the size of
    the first omitted correction. Valid for any s != 1.
    """
    s = complex(s)
    if start < 1:
        raise DomainError(f"tail start must be >= 1, got {start}")
    if s == 1:
        raise DomainError("the tail diverges at s = 1")

    log_n = math.log(start)
    n_pow = np.exp(-s * log_n)
    value = start * n_pow / (s - 1) + 0.5 * n_pow

    coeffs = _em_coefficients()
    rising = s  # (s)_{2k-1}
    power = n_pow / start  # start^(-s-2k+1) for k = 1
    prev = math.inf
    used = 0
    est_error = 0.0
    for k in range(1, EM_MAX_CORRECTIONS + 1):
        term = coeffs[k - 1] * rising * power
        size = abs(term)
        if size > prev:
            # asymptotic series started to diverge
            est_error = prev
            break
        if size < tol * 1e-3:
            est_error = size
            break
        value += term
        used = k
        prev = size
        est_error = size
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= start * start
    else:
        logger.debug(f"Euler-Maclaurin corrections exhausted for s={s}, start={start}")

    return complex(value), float(est_error), used
