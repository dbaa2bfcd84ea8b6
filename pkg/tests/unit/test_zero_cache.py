import pytest

from zetakit.errors import CacheIOError, MissingPrerequisiteError
from zetakit.schemas import ZeroRecord
from zetakit.services.zero_cache import ZeroCache, format_t

pytestmark = pytest.mark.unit


def record(index, t, residual=1e-12):
    return ZeroRecord(index=index, t=t, residual=residual)


@pytest.fixture
def cache(tmp_path):
    return ZeroCache(tmp_path / "nested" / "zeros.csv")


def test_missing_file_loads_empty(cache):
    assert cache.load() == []


def test_store_writes_sorted_csv(cache):
    cache.store([record(1, 21.022039638771555), record(2, 14.134725141734695)])
    lines = cache.path.read_text().splitlines()
    assert lines[0] == "index,t,residual"
    assert lines[1].startswith("1,14.134725141734695,")
    assert lines[2].startswith("2,21.022039638771555,")


def test_store_is_idempotent(cache):
    zeros = [record(1, 14.134725141734695), record(2, 21.022039638771555)]
    cache.store(zeros)
    before = cache.path.read_bytes()
    cache.store(zeros)
    assert cache.path.read_bytes() == before


def test_store_merges_and_reindexes(cache):
    cache.store([record(1, 21.022039638771555)])
    merged = cache.store([record(1, 14.134725141734695), record(2, 21.022039638771555 + 1e-10)])
    assert [r.index for r in merged] == [1, 2]
    assert [r.t for r in merged] == [14.134725141734695, 21.022039638771555]
    assert cache.get(2).t == 21.022039638771555


def test_get_missing_zero(cache):
    cache.store([record(1, 14.134725141734695)])
    with pytest.raises(MissingPrerequisiteError):
        cache.get(2)
    with pytest.raises(MissingPrerequisiteError):
        cache.get(0)


def test_bad_header(tmp_path):
    path = tmp_path / "zeros.csv"
    path.write_text("t,index\n1,2\n")
    with pytest.raises(CacheIOError):
        ZeroCache(path).load()


def test_malformed_row(tmp_path):
    path = tmp_path / "zeros.csv"
    path.write_text("index,t,residual\n1,abc,0\n")
    with pytest.raises(CacheIOError):
        ZeroCache(path).load()


def test_unwritable_location(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(CacheIOError):
        ZeroCache(blocker / "zeros.csv").store([record(1, 14.1)])


def test_format_t():
    assert format_t(14.134725141734695) == "14.134725141734695"
    assert format_t(14.5) == "14.5000000000"
    assert float(format_t(14.5)) == 14.5
    assert format_t(1e16) == "1.00000000000e+16"
