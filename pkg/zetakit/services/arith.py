"""
Arithmetic Service
Exact integer functions on natural numbers: factorization, big omega,
Liouville sign, divisors and the beta divisor sum with its closed form
"""

import logging
import math
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from zetakit.errors import DomainError, RangeError
from zetakit.models import BetaClass
from zetakit.schemas import INT64_MAX, BetaValue, Factorization, PrimePower

logger = logging.getLogger(__name__)

SIEVE_LIMIT = 10**7

# Deterministic Miller-Rabin witnesses for every n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

PrimePairs = Sequence[Tuple[int, int]]


def natural(n, name: str = "n") -> int:
    """Validate a natural number argument inside the 64-bit range"""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise DomainError(f"{name} must be a natural number (>= 1), got {n}")
    if n > INT64_MAX:
        raise RangeError(f"{name}={n} exceeds the 64-bit range")
    return n


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 64-bit integers"""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p

    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1

    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeSieve:
    """Smallest-prime-factor table for bulk factorization up to `limit`"""

    def __init__(self, limit: int):
        if limit < 2 or limit > SIEVE_LIMIT:
            raise RangeError(f"sieve limit must lie in [2, {SIEVE_LIMIT}], got {limit}")

        spf = np.zeros(limit + 1, dtype=np.int32)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                block = spf[p * p::p]
                block[block == 0] = p

        # Entries never marked are primes
        unmarked = np.nonzero(spf == 0)[0]
        unmarked = unmarked[unmarked >= 2]
        spf[unmarked] = unmarked

        self.limit = limit
        self._spf = spf
        logger.debug(f"Built smallest-prime-factor sieve up to {limit}")

    def factor_pairs(self, n: int) -> List[Tuple[int, int]]:
        pairs: List[Tuple[int, int]] = []
        while n > 1:
            p = int(self._spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
        return pairs

    def factorize(self, n: int) -> Factorization:
        n = natural(n)
        if n > self.limit:
            raise RangeError(f"n={n} exceeds sieve limit {self.limit}")
        return _to_factorization(n, self.factor_pairs(n))

    def primes(self) -> np.ndarray:
        idx = np.arange(self.limit + 1)
        mask = (self._spf == idx) & (idx >= 2)
        return idx[mask]

    def big_omega_table(self) -> np.ndarray:
        """Omega(n) for every 0 <= n <= limit (entries 0 and 1 are zero)"""
        omega = np.zeros(self.limit + 1, dtype=np.int32)
        rest = np.arange(self.limit + 1, dtype=np.int64)
        active = rest > 1
        while active.any():
            omega[active] += 1
            rest[active] //= self._spf[rest[active]]
            active = rest > 1
        return omega


@lru_cache(maxsize=4)
def shared_sieve(limit: int) -> PrimeSieve:
    """Process-wide read-only sieve, built once per limit"""
    return PrimeSieve(limit)


def primes_up_to(limit: int) -> List[int]:
    if limit < 2:
        return []
    return [int(p) for p in shared_sieve(limit).primes()]


def _trial_division(n: int) -> List[Tuple[int, int]]:
    pairs: List[Tuple[int, int]] = []
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        pairs.append((2, e))

    d = 3
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            pairs.append((d, e))
        d += 2
    if n > 1:
        pairs.append((n, 1))
    return pairs


def _factor_pairs(n: int, sieve: Optional[PrimeSieve] = None) -> List[Tuple[int, int]]:
    if sieve is not None and n <= sieve.limit:
        return sieve.factor_pairs(n)
    return _trial_division(n)


def _to_factorization(n: int, pairs: PrimePairs) -> Factorization:
    return Factorization(n=n, factors=[PrimePower(prime=p, exponent=e) for p, e in pairs])


def factorize(n: int, sieve: Optional[PrimeSieve] = None) -> Factorization:
    """
    Unique prime-power decomposition of a natural number

    Args:
        n: natural number in [1, 2**63 - 1]
        sieve: optional smallest-prime-factor table used when n fits in it

    Returns:
        Factorization with strictly increasing primes; empty for n = 1
    """
    n = natural(n)
    return _to_factorization(n, _factor_pairs(n, sieve))


def big_omega(n: int, sieve: Optional[PrimeSieve] = None) -> int:
    """Number of prime factors of n counted with multiplicity"""
    n = natural(n)
    return sum(e for _, e in _factor_pairs(n, sieve))


def liouville(n: int, sieve: Optional[PrimeSieve] = None) -> int:
    return -1 if big_omega(n, sieve) % 2 else 1


def _divisors_with_omega(pairs: PrimePairs) -> Iterator[Tuple[int, int]]:
    """Yield (divisor, Omega(divisor)) for every divisor of prod(p**e)"""
    primes = [p for p, _ in pairs]
    for exps in product(*(range(e + 1) for _, e in pairs)):
        d = 1
        for p, i in zip(primes, exps):
            d *= p ** i
        yield d, sum(exps)


def divisors(n: int, sieve: Optional[PrimeSieve] = None) -> List[int]:
    n = natural(n)
    return sorted(d for d, _ in _divisors_with_omega(_factor_pairs(n, sieve)))


def beta_divisor_sum(n: int, sieve: Optional[PrimeSieve] = None) -> int:
    """
    Divisor sum over m | n of (-1)^(n/m + 1) * (-1)^Omega(m)

    Evaluated term by term in exact integer arithmetic.
    """
    n = natural(n)
    total = 0
    for m, omega_m in _divisors_with_omega(_factor_pairs(n, sieve)):
        sign = 1 if (n // m) % 2 else -1
        total += -sign if omega_m % 2 else sign
    return total


def beta_from_factorization(factors: Union[Factorization, PrimePairs]) -> int:
    """
    The beta divisor sum evaluated from exponent vectors alone

    The parity of n/m only depends on the exponent of 2 left in n/m, and
    Omega(m) is the exponent sum of m, so n itself is never formed. This
    allows prime powers beyond the 64-bit range.
    """
    pairs = factors.pairs() if isinstance(factors, Factorization) else list(factors)
    twos = dict(pairs).get(2, 0)
    primes = [p for p, _ in pairs]

    total = 0
    for exps in product(*(range(e + 1) for _, e in pairs)):
        used_twos = exps[primes.index(2)] if twos else 0
        sign = -1 if twos - used_twos >= 1 else 1
        total += -sign if sum(exps) % 2 else sign
    return total


def _is_square(n: int) -> bool:
    r = math.isqrt(n)
    return r * r == n


def beta_closed_form(n: int) -> BetaValue:
    """1 on squares, -2 on twice-squares, 0 otherwise"""
    n = natural(n)
    if _is_square(n):
        return BetaValue(n=n, value=1, classification=BetaClass.SQUARE)
    if n % 2 == 0 and _is_square(n // 2):
        return BetaValue(n=n, value=-2, classification=BetaClass.TWICE_SQUARE)
    return BetaValue(n=n, value=0, classification=BetaClass.OTHER)


def beta_table(n_max: int) -> Iterator[Tuple[int, int, BetaValue]]:
    """
    Rows (n, divisor-sum beta, closed-form beta) for 1 <= n <= n_max

    Uses one shared sieve for the whole range.
    """
    n_max = natural(n_max, "n_max")
    if n_max > SIEVE_LIMIT:
        raise RangeError(f"beta tables are limited to n <= {SIEVE_LIMIT}, got {n_max}")

    sieve = shared_sieve(max(n_max, 2))
    logger.info(f"Tabulating beta for n <= {n_max}")
    for n in range(1, n_max + 1):
        yield n, beta_divisor_sum(n, sieve), beta_closed_form(n)
