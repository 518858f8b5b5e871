import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import Session

from opalg import linalg
from opalg import weingarten as wg
from opalg.config import SizeGuards
from opalg.exceptions import SingularGramError, SizeGuardError
from opalg.partitions import ColoredWord, PartitionClass
from opalg.store.entities import Base
from opalg.store.repository import WeingartenRecordRepository

engine = create_engine("sqlite:///:memory:")

with engine.begin() as conn:
    Base.metadata.create_all(conn)


@pytest.fixture
def session():
    session = Session(bind=engine)
    yield session
    session.rollback()
    session.close()


@pytest.fixture
def cache():
    return wg.WeingartenCache()


def test_should_parse_tags_and_group_names():
    assert wg.EasyCategory.parse("O_N^+").klass is PartitionClass.NC2
    assert wg.EasyCategory.parse("P2").klass is PartitionClass.P2
    with pytest.raises(ValueError):
        wg.EasyCategory.for_group("Sp_N")


@pytest.mark.parametrize("group", list(wg.GROUPS))
@pytest.mark.parametrize("k", [2, 3, 4])
def test_should_invert_gram_matrix(group, k, cache):
    cat = wg.EasyCategory.for_group(group)
    g = wg.gram(cat, k, 7, cat.word_for(k, None))
    w = wg.weingarten(cat, k, 7, cache=cache)
    assert w.basis == g.basis
    if g.basis:
        assert linalg.matmul(g.entries, w.entries) == linalg.identity(len(g.basis))


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("n", [1, 2, 5])
def test_should_factor_gram_determinant(k, n):
    formula, direct = wg.gram_determinant(k, n)
    assert formula == direct


@pytest.mark.parametrize(
    "group,rows,cols,colors,n,expected",
    [
        ("O_N", (1, 1), (1, 1), None, 3, Fraction(1, 3)),
        ("O_N", (1, 1, 1, 1), (1, 1, 1, 1), None, 3, Fraction(1, 5)),
        ("U_N", (1, 1), (1, 1), "o*", 3, Fraction(1, 3)),
        ("U_N", (1, 1, 1, 1), (1, 1, 1, 1), "oo**", 3, Fraction(1, 6)),
        ("U_N", (1, 1), (1, 1), None, 3, Fraction(0)),
        ("S_N", (1,), (1,), None, 4, Fraction(1, 4)),
        ("S_N", (1, 2), (1, 2), None, 4, Fraction(1, 12)),
    ],
)
def test_should_integrate_coordinate_words(group, rows, cols, colors, n, expected, cache):
    cat = wg.EasyCategory.for_group(group)
    word = ColoredWord.parse(colors) if colors else None
    assert wg.integrate(cat, n, rows, cols, word, cache=cache) == expected


def test_should_reject_index_out_of_range(cache):
    with pytest.raises(ValueError, match="Indices"):
        wg.integrate(wg.EasyCategory.for_group("O_N"), 2, (1, 3), (1, 1), cache=cache)


def test_should_report_rank_of_singular_gram(cache):
    with pytest.raises(SingularGramError) as e:
        wg.weingarten(wg.EasyCategory.for_group("O_N"), 4, 1, cache=cache)
    assert (e.value.rank, e.value.size) == (1, 3)


def test_should_refuse_large_gram_basis(cache):
    with pytest.raises(SizeGuardError):
        wg.weingarten(wg.EasyCategory.for_group("S_N"), 4, 5, guards=SizeGuards(gram_basis=10), cache=cache)


@pytest.mark.parametrize("group,p,expected", [("O_N", 4, 3), ("S_N^+", 3, 5), ("O_N^+", 4, 2), ("S_N", 3, 5)])
def test_should_count_basis_with_full_character(group, p, expected, cache):
    cat = wg.EasyCategory.for_group(group)
    assert wg.character_moments(cat, 10, p, cache=cache) == expected
    assert wg.character_limit(cat, p) == expected


def test_should_refuse_fractional_truncation(cache):
    with pytest.raises(ValueError, match="tN"):
        wg.character_moments(wg.EasyCategory.for_group("O_N"), 3, 2, Fraction(1, 2), cache=cache)


def test_should_skip_fractional_truncation_in_table():
    rows = wg.truncated_character_check(wg.EasyCategory.for_group("O_N"), 2, Fraction(1, 2), [3, 4])
    assert [row.n for row in rows] == [4]
    assert rows[0].value == Fraction(1, 2)
    assert rows[0].gap == 0


def test_should_reuse_stored_matrices(session, mocker):
    repository = WeingartenRecordRepository(session)
    cat = wg.EasyCategory.for_group("O_N^+")
    first = wg.weingarten(cat, 4, 3, cache=wg.WeingartenCache(repository))
    session.flush()
    assert repository.find_matrix("NC2", 4, 3) is not None

    invert = mocker.spy(wg, "_invert")
    second = wg.weingarten(cat, 4, 3, cache=wg.WeingartenCache(repository))
    assert second == first
    invert.assert_not_called()


def test_should_memoize_in_process(cache):
    cat = wg.EasyCategory.for_group("H_N")
    wg.weingarten(cat, 4, 3, cache=cache)
    wg.weingarten(cat, 4, 3, cache=cache)
    assert len(cache) == 1


def test_should_use_given_empty_cache(mocker):
    repository = mocker.Mock()
    repository.find_matrix.return_value = None
    cache = wg.WeingartenCache(repository)
    wg.default_cache().clear()

    wg.weingarten(wg.EasyCategory.for_group("H_N"), 2, 3, cache=cache)

    assert len(cache) == 1
    assert len(wg.default_cache()) == 0
    repository.find_matrix.assert_called_once_with("Peven", 2, 3, "")
    repository.save.assert_called_once()


def test_should_store_concurrent_misses_once(mocker):
    def slow_miss(*args):
        time.sleep(0.05)
        return None

    repository = mocker.Mock()
    repository.find_matrix.side_effect = slow_miss
    cache = wg.WeingartenCache(repository)
    cat = wg.EasyCategory.for_group("O_N")

    with ThreadPoolExecutor(max_workers=2) as pool:
        first, second = pool.map(lambda _: cache.get(cat, 4, 5), range(2))

    assert first is second
    assert repository.find_matrix.call_count == 1
    assert repository.save.call_count == 1
