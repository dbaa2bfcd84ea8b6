import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from zetakit.models import BetaClass, Regime

ZERO_RESIDUAL_LIMIT = 1e-6
INT64_MAX = 2**63 - 1


# Arithmetic Schemas
class PrimePower(BaseModel):
    prime: int = Field(..., ge=2)
    exponent: int = Field(..., ge=1)


class Factorization(BaseModel):
    n: int = Field(..., ge=1, le=INT64_MAX)
    factors: List[PrimePower] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_product(self) -> "Factorization":
        primes = [f.prime for f in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if math.prod(f.prime ** f.exponent for f in self.factors) != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")
        from zetakit.services.arith import is_prime
        composite = [p for p in primes if not is_prime(p)]
        if composite:
            raise ValueError(f"non-prime factors listed: {composite}")
        return self

    def pairs(self) -> List[Tuple[int, int]]:
        return [(f.prime, f.exponent) for f in self.factors]


class BetaValue(BaseModel):
    n: int = Field(..., ge=1)
    value: int
    classification: BetaClass

    @model_validator(mode="after")
    def check_classification(self) -> "BetaValue":
        expected = {BetaClass.SQUARE: 1, BetaClass.TWICE_SQUARE: -2, BetaClass.OTHER: 0}
        if expected[self.classification] != self.value:
            raise ValueError(f"value {self.value} inconsistent with {self.classification.value}")
        return self


# Complex values and evaluation results
class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


class EvalResult(BaseModel):
    value: ComplexValue
    terms_used: int = Field(..., ge=0)
    est_error: float = Field(..., ge=0)
    regime: Regime

    @field_validator("est_error")
    @classmethod
    def finite_error(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("est_error must be finite")
        return v

    def as_complex(self) -> complex:
        return self.value.to_complex()


class ZeroRecord(BaseModel):
    index: int = Field(..., ge=1)
    t: float = Field(..., gt=0)
    residual: float = Field(..., ge=0, lt=ZERO_RESIDUAL_LIMIT)


# Identity-harness Schemas
class SeriesPartial(BaseModel):
    value: float
    n_terms: int = Field(..., ge=1)
    accelerated: bool
    est_error: float = Field(..., ge=0)


class ABValues(BaseModel):
    A: float
    B: float
    terms_used: int
    est_error: float = Field(..., ge=0)


class BetaSeriesParts(BaseModel):
    square_part: float
    twice_square_part: float
    total: float
    n_terms: int
    est_error: float = Field(0.0, ge=0)


class LinearCoeffs(BaseModel):
    sigma: float
    t: float
    p: float
    q: float
    r: float
    s_coef: float
    det: float

    @model_validator(mode="after")
    def check_det(self) -> "LinearCoeffs":
        expected = self.p * self.s_coef - self.q * self.r
        if not math.isclose(self.det, expected, rel_tol=1e-12, abs_tol=1e-15):
            raise ValueError(f"det {self.det} != p*s - q*r = {expected}")
        return self


class DetGridSummary(BaseModel):
    min_det: float
    sigma_at_min: float
    t_at_min: float
    max_margin_gap: float = Field(..., ge=0)  # max |det - amgm_margin|
    points: int


class SystemResiduals(BaseModel):
    residual1: float = Field(..., ge=0)
    residual2: float = Field(..., ge=0)
    det: float
    kappa: Optional[float] = None  # None when the matrix is singular


class ProbeReport(BaseModel):
    sigma: float
    t: float
    n_terms: int
    residual_31: float
    residual_32: float
    residual_33: List[Tuple[float, float]]
    f1_samples: List[Tuple[int, float]]
    f2_samples: List[Tuple[int, float]]
    A: Optional[float] = None
    B: Optional[float] = None
    zeta2s: Optional[ComplexValue] = None
    coeffs: Optional[LinearCoeffs] = None
    system_residuals: Optional[Tuple[float, float]] = None
    regime_note: Optional[str] = None


class SwapReport(BaseModel):
    sigma: float
    t: float
    truncation: int = Field(..., ge=1)
    lhs: float
    rhs: float
    gap: float = Field(..., ge=0)
    diagonal_rhs: float
    truncation_gap: float = Field(..., ge=0)


# Verification Schemas
class CheckResult(BaseModel):
    name: str
    theorem: str
    passed: bool
    margin: Optional[float] = None
    detail: str = ""


class SuiteReport(BaseModel):
    suite: str
    passed: bool
    checks: List[CheckResult]
