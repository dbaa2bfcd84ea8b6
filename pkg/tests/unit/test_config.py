from pathlib import Path

import pytest
from pydantic import ValidationError

from zetakit.config import RunConfig, load_config
from zetakit.models import OutputFormat

pytestmark = pytest.mark.unit


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    for name in ("ZETAKIT_CACHE", "ZETAKIT_TOLERANCE", "ZETAKIT_MAX_TERMS", "ZETAKIT_OUTPUT_FORMAT"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)  # keep a developer .env out of the way


def test_defaults():
    config = load_config()
    assert config.tolerance == 1e-8
    assert config.max_terms == 2000
    assert config.output_format == OutputFormat.PLAIN
    assert config.zero_cache_path == Path("data/zeros.csv")
    assert config.workers() >= 1


def test_environment(monkeypatch):
    monkeypatch.setenv("ZETAKIT_CACHE", "/tmp/elsewhere.csv")
    monkeypatch.setenv("ZETAKIT_TOLERANCE", "1e-10")
    config = load_config()
    assert config.zero_cache_path == Path("/tmp/elsewhere.csv")
    assert config.tolerance == 1e-10


def test_overrides_beat_environment(monkeypatch):
    monkeypatch.setenv("ZETAKIT_CACHE", "/tmp/elsewhere.csv")
    config = load_config(zero_cache_path="local.csv", tolerance=None)
    assert config.zero_cache_path == Path("local.csv")
    assert config.tolerance == 1e-8


def test_dotenv_file(tmp_path):
    (tmp_path / ".env").write_text("ZETAKIT_MAX_TERMS=500\n")
    assert load_config().max_terms == 500


def test_parallelism():
    assert load_config(parallelism=3).workers() == 3


@pytest.mark.parametrize("overrides", [{"tolerance": 0}, {"max_terms": 8}, {"parallelism": -1}])
def test_invalid_values(overrides):
    with pytest.raises(ValidationError):
        RunConfig(**overrides)
