import numpy as np
import pytest

from zetakit.config import RunConfig
from zetakit.errors import ConditioningError
from zetakit.models import Suite
from zetakit.services import identities, verification

pytestmark = pytest.mark.unit


@pytest.fixture
def config():
    return RunConfig(parallelism=1)


@pytest.fixture
def rng(config):
    return np.random.default_rng(config.seed)


@pytest.mark.parametrize(
    "check",
    [
        verification.check_prime_powers,
        verification.check_odd_arguments,
        verification.check_liouville_multiplicative,
        verification.check_zeta_values,
        verification.check_conjugate_symmetry,
        verification.check_euler_product,
        verification.check_rearrangement,
        verification.check_determinant,
        verification.check_zeta_2s,
        verification.check_beta_system,
    ],
)
def test_check_passes(check, config, rng):
    result = check(config, rng)
    assert result.passed, result.detail
    assert result.theorem


def test_failing_check_is_reported(config, rng):
    def check_broken(config, rng):
        raise ConditioningError("ill-conditioned")

    result = verification._run_check(check_broken, config, rng)
    assert not result.passed
    assert result.name == "broken"
    assert "ConditioningError" in result.detail


def test_beta_system_catches_sign_flip(monkeypatch, config, rng):
    original = identities.linear_coeffs

    def flipped(sigma, t):
        c = original(sigma, t)
        return c.model_copy(update={"p": -c.p, "q": -c.q, "r": -c.r, "s_coef": -c.s_coef})

    monkeypatch.setattr(identities, "linear_coeffs", flipped)
    assert not verification.check_beta_system(config, rng).passed


def test_suites_cover_every_named_suite():
    assert set(verification.SUITES) == {Suite.ARITH, Suite.ZETA, Suite.IDENTITIES}
    assert all(verification.SUITES.values())


@pytest.mark.slow
def test_arith_suite(config):
    (report,) = verification.run_suite(Suite.ARITH, config)
    assert report.suite == "arith"
    assert report.passed, [c.detail for c in report.checks if not c.passed]
    assert len(report.checks) == len(verification.SUITES[Suite.ARITH])


@pytest.mark.slow
def test_suite_is_reproducible(config):
    first = verification.run_suite(Suite.ARITH, config)
    second = verification.run_suite(Suite.ARITH, config)
    assert [r.model_dump() for r in first] == [r.model_dump() for r in second]
