import pytest

from opalg.store.entities import ReproduceRecord, WeingartenRecord
from opalg.store.utils import EntityInformation
from tests.fixtures.records import record


@pytest.fixture
def entity_information():
    return EntityInformation[ReproduceRecord, int](ReproduceRecord)


def test_should_get_attribute_names(entity_information):
    assert entity_information.attribute_names == (
        "id",
        "suite",
        "criterion",
        "measured",
        "expected",
        "passed",
        "seed",
        "created",
    )


def test_should_get_id_attribute_name(entity_information):
    assert entity_information.id_attribute_name == "id"


def test_should_get_id_attribute(entity_information):
    assert entity_information.id_attribute is ReproduceRecord.id


def test_should_get_entity_id(entity_information):
    assert entity_information.get_id(record(7)) == 7


def test_should_be_new(entity_information):
    assert entity_information.is_new(record())


def test_should_not_be_new(entity_information):
    assert not entity_information.is_new(record(1))


def test_should_read_weingarten_columns():
    information = EntityInformation[WeingartenRecord, int](WeingartenRecord)
    assert "entries" in information.attribute_names
    assert information.id_attribute_name == "id"
