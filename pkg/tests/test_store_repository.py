import pytest
from springdata.domain import Direction, Pageable, Sort
from sqlalchemy import create_engine, delete
from sqlalchemy.orm import Session

from opalg.store.entities import Base, ReproduceRecord, WeingartenRecord, open_session
from opalg.store.repository import ReproduceRecordRepository, WeingartenRecordRepository
from tests.fixtures.records import record

engine = create_engine("sqlite:///:memory:")

with engine.begin() as conn:
    Base.metadata.create_all(conn)


@pytest.fixture
def session():
    session = Session(bind=engine)
    yield session
    session.close()


@pytest.fixture
def repository(session):
    return ReproduceRecordRepository(session)


@pytest.fixture
def records(session):
    records = [
        record(1, "catalan"),
        record(2, "tl", "TL_3(2) relations", passed=False),
        record(3, "catalan", "NC(3) = Catalan(3)"),
    ]
    session.add_all(records)
    session.commit()
    return records


@pytest.fixture
def clean_database(session):
    yield
    session.execute(delete(ReproduceRecord))
    session.execute(delete(WeingartenRecord))
    session.commit()


def test_should_reject_missing_session():
    with pytest.raises(ValueError, match="Session must not be None"):
        ReproduceRecordRepository(None)


@pytest.mark.usefixtures("records", "clean_database")
def test_should_count_repository(repository):
    assert repository.count() == 3


@pytest.mark.usefixtures("records", "clean_database")
def test_should_clear_repository(repository):
    repository.clear()
    assert repository.count() == 0


@pytest.mark.usefixtures("records", "clean_database")
def test_should_delete_record_by_id(repository):
    repository.delete_by_id(1)
    assert repository.count() == 2


@pytest.mark.usefixtures("records", "clean_database")
def test_should_ignore_unknown_id_on_delete(repository):
    repository.delete_by_id(99)
    assert repository.count() == 3


@pytest.mark.usefixtures("clean_database")
def test_should_reject_none_id(repository):
    with pytest.raises(ValueError, match="ID must not be None"):
        repository.delete_by_id(None)
    with pytest.raises(ValueError, match="ID must not be None"):
        repository.exists_by_id(None)


@pytest.mark.usefixtures("records", "clean_database")
def test_should_record_exist_by_id(repository):
    assert repository.exists_by_id(1)


@pytest.mark.usefixtures("clean_database")
def test_should_record_not_exist_by_id(repository):
    assert not repository.exists_by_id(1)


@pytest.mark.usefixtures("records", "clean_database")
def test_should_find_all_records(repository):
    assert [row.id for row in repository.find_all()] == [1, 2, 3]


@pytest.mark.usefixtures("records", "clean_database")
def test_should_find_all_records_with_sorting(repository):
    result = repository.find_all(Sort.by("id", direction=Direction.DESC))
    assert [row.id for row in result] == [3, 2, 1]


@pytest.mark.usefixtures("records", "clean_database")
def test_should_find_record_by_id(repository):
    assert repository.find_by_id(2).suite == "tl"


@pytest.mark.usefixtures("clean_database")
def test_should_save_record(repository):
    result = repository.save(record(1, passed=True))
    assert result.id == 1
    assert repository.count() == 1

    # same id overwrites
    result = repository.save(record(1, passed=False))
    assert repository.count() == 1
    assert repository.find_by_id(1).passed is False

    result = repository.save(record(2))
    assert result.id == 2
    assert repository.count() == 2


@pytest.mark.usefixtures("clean_database")
def test_should_save_all_records_without_ids(repository, session):
    result = repository.save_all([record(), record(), record()])
    session.flush()
    assert all(row.id is not None for row in result)
    assert repository.count() == 3


@pytest.mark.usefixtures("clean_database")
def test_should_reject_none_entities(repository):
    with pytest.raises(ValueError):
        repository.save(None)
    with pytest.raises(ValueError):
        repository.save_all([record(), None])


@pytest.mark.usefixtures("records", "clean_database")
def test_should_find_page_of_records(repository):
    result = repository.find_page(Pageable.of_size(2))
    assert [row.id for row in result.content] == [1, 2]
    assert result.total_elements == 3


@pytest.mark.usefixtures("records", "clean_database")
def test_should_find_suite_page_newest_first(repository):
    result = repository.find_suite_page("catalan", Pageable.of_size(10))
    assert [row.id for row in result.content] == [3, 1]
    assert result.total_elements == 2


@pytest.mark.usefixtures("records", "clean_database")
def test_should_find_every_suite_when_none_given(repository):
    result = repository.find_suite_page(None, Pageable.of_size(2))
    assert [row.id for row in result.content] == [3, 2]
    assert result.total_elements == 3


@pytest.mark.usefixtures("clean_database")
def test_should_find_weingarten_matrix(session):
    repository = WeingartenRecordRepository(session)
    repository.save(WeingartenRecord(category="NC2", k=2, n=3, word="", basis='["{1,2}"]', entries='[["1/3"]]'))
    session.commit()
    assert repository.find_matrix("NC2", 2, 3).entries == '[["1/3"]]'
    assert repository.find_matrix("NC2", 2, 4) is None


def test_should_open_session_and_create_tables():
    session = open_session("sqlite:///:memory:")
    try:
        assert ReproduceRecordRepository(session).count() == 0
    finally:
        session.close()


def test_should_reject_missing_url():
    with pytest.raises(ValueError, match="Database URL must not be None"):
        open_session(None)
