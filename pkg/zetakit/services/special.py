"""
Special Function Service
Complex elementary functions with overflow guards, the gamma function and
its logarithm (Lanczos approximation) and the Riemann-Siegel theta angle
"""

import cmath
import logging
import math
from typing import Union

from zetakit.errors import DomainError, PoleError, RangeError
from zetakit.schemas import ComplexValue

logger = logging.getLogger(__name__)

# exp overflows a double just past 709.78
EXP_GUARD = 700.0
POLE_TOLERANCE = 1e-12

LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_SQRT_2PI = math.sqrt(2 * math.pi)
_LOG_PI = math.log(math.pi)

Number = Union[complex, float, int, ComplexValue]


def as_complex(z: Number) -> complex:
    if isinstance(z, ComplexValue):
        return z.to_complex()
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")
    return z


def c_exp(z: Number) -> complex:
    z = as_complex(z)
    if z.real > EXP_GUARD:
        raise RangeError(f"exp overflow: Re(z)={z.real} exceeds {EXP_GUARD}")
    return cmath.exp(z)


def c_log(z: Number) -> complex:
    """Principal logarithm, branch cut on the negative real axis"""
    z = as_complex(z)
    if z == 0:
        raise PoleError("log is undefined at 0", point=0j)
    return cmath.log(z)


def c_sin(z: Number) -> complex:
    z = as_complex(z)
    if abs(z.imag) > EXP_GUARD:
        raise RangeError(f"sin overflow: |Im(z)|={abs(z.imag)} exceeds {EXP_GUARD}")
    x, y = z.real, z.imag
    return complex(math.sin(x) * math.cosh(y), math.cos(x) * math.sinh(y))


def _check_pole(z: complex) -> None:
    k = round(z.real)
    if k <= 0 and abs(z - k) <= POLE_TOLERANCE:
        raise PoleError(f"gamma has a pole at {k}", point=complex(k))


def _lanczos_sum(z: complex) -> complex:
    x = LANCZOS_COEFFS[0]
    for i, c in enumerate(LANCZOS_COEFFS[1:], start=1):
        x += c / (z + i)
    return x


def c_gamma(z: Number) -> complex:
    """
    Gamma function on the complex plane

    Reflection handles Re(z) < 1/2. Raises PoleError within 1e-12 of a
    non-positive integer and RangeError when the result overflows.
    """
    z = as_complex(z)
    _check_pole(z)

    if z.real < 0.5:
        return math.pi / (c_sin(math.pi * z) * c_gamma(1 - z))

    z -= 1
    x = _lanczos_sum(z)
    t = z + LANCZOS_G + 0.5
    try:
        return _SQRT_2PI * t ** (z + 0.5) * cmath.exp(-t) * x
    except OverflowError as e:
        raise RangeError(f"gamma overflow at {z + 1}") from e


def c_log_gamma(z: Number) -> complex:
    """Continuous branch of log Gamma on Re(z) > 0, real on the positive axis"""
    z = as_complex(z)
    if z.real <= 0:
        raise DomainError(f"log-gamma requires Re(z) > 0, got {z}")
    if z.real < 1:
        # log of the Lanczos sum wraps across the branch cut near the imaginary axis
        return c_log_gamma(z + 1) - c_log(z)

    z -= 1
    x = _lanczos_sum(z)
    t = z + LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def riemann_siegel_theta(t: float) -> float:
    """
    Phase angle making exp(i theta(t)) zeta(1/2 + it) real

    Uses log Gamma(z + 1) - log z for z = 1/4 + it/2 so the log-gamma call
    stays well inside the right half-plane.
    """
    z = complex(0.25, 0.5 * t)
    return (c_log_gamma(z + 1) - c_log(z)).imag - 0.5 * t * _LOG_PI
