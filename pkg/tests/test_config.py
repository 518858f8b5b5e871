import pytest

from opalg.config import DEFAULT_GUARDS, RunConfig, SizeGuards, database_url, thread_count
from opalg.exceptions import SizeGuardError


def test_should_accept_value_at_limit():
    SizeGuards(partitions=10).check("partitions", 10)


def test_should_refuse_value_above_limit():
    with pytest.raises(SizeGuardError) as e:
        SizeGuards(partitions=10).check("partitions", 11)
    assert (e.value.guard, e.value.value, e.value.limit) == ("partitions", 11, 10)


def test_should_override_guards_without_touching_defaults():
    guards = DEFAULT_GUARDS.with_overrides({"cesaro": 16})
    assert guards.cesaro == 16
    assert DEFAULT_GUARDS.cesaro == 4096


def test_should_reject_unknown_guard():
    with pytest.raises(ValueError, match="Unknown size guard"):
        DEFAULT_GUARDS.with_overrides({"memory": 1})


def test_should_reject_unknown_format():
    with pytest.raises(ValueError):
        RunConfig("tl dim", fmt="xml")


def test_should_read_thread_count(monkeypatch):
    monkeypatch.setenv("OPALG_THREADS", "3")
    assert thread_count() == 3


@pytest.mark.parametrize("raw", ["0", "many"])
def test_should_reject_bad_thread_count(monkeypatch, raw):
    monkeypatch.setenv("OPALG_THREADS", raw)
    with pytest.raises(ValueError):
        thread_count()


def test_should_prefer_explicit_database_url(monkeypatch):
    monkeypatch.setenv("OPALG_DB", "sqlite:///env.db")
    assert database_url("sqlite:///flag.db") == "sqlite:///flag.db"
    assert database_url() == "sqlite:///env.db"


def test_should_have_no_database_by_default(monkeypatch):
    monkeypatch.delenv("OPALG_DB", raising=False)
    assert database_url() is None
