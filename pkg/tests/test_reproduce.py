import pytest

from opalg import reproduce
from opalg.reproduce import Criterion, SuiteOptions, SuiteReport


def test_should_pass_catalan_suite():
    report = reproduce.reproduce("catalan")
    assert report.passed
    assert len(report.criteria) == 33
    assert report.criteria[0].name == "|NC2(0)|"


def test_should_pass_tl_suite():
    assert reproduce.reproduce("tl", SuiteOptions(seed=3)).passed


def test_should_reject_unknown_suite():
    with pytest.raises(ValueError, match="Suite must be one of"):
        reproduce.reproduce("jones")


def test_should_save_every_criterion(mocker):
    repository = mocker.Mock()
    report = reproduce.reproduce("catalan", SuiteOptions(seed=5), repository)

    repository.save_all.assert_called_once()
    (records,) = repository.save_all.call_args.args
    assert len(records) == len(report.criteria)
    assert {r.suite for r in records} == {"catalan"}
    assert {r.seed for r in records} == {"5"}
    assert all(r.passed for r in records)


def test_should_report_failures():
    report = SuiteReport("demo", (Criterion("a", True, "1", "1"), Criterion("b", False, "2", "3")))
    assert not report.passed
    assert [c.name for c in report.failures] == ["b"]
    record = report.to_records()[1]
    assert (record.criterion, record.measured, record.expected, record.passed) == ("b", "2", "3", False)


def test_should_detect_suite_failure(mocker):
    mocker.patch.dict(reproduce.SUITES, {"catalan": lambda options: [Criterion("forced", False, "0", "1")]})
    assert not reproduce.reproduce("catalan").passed


def test_should_check_truncated_characters_up_to_fourth_moment():
    criteria = reproduce.weingarten_suite(SuiteOptions())
    names = [c.name for c in criteria if c.name.startswith("truncated gap O_N ")]
    assert names == [f"truncated gap O_N p={p}" for p in range(1, 5)]
    odd = [c for c in criteria if c.name in ("truncated gap O_N p=1", "truncated gap O_N p=3")]
    assert all(c.passed for c in odd)


@pytest.mark.parametrize("gaps,expected", [([0, 0], True), ([3, 1], True), ([], True), ([1, 1], False), ([0, 1], False)])
def test_should_accept_vanishing_or_decreasing_gaps(gaps, expected):
    assert reproduce._shrinking(gaps) is expected
