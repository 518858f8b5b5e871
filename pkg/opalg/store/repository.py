import logging
from typing import Generic, List, Optional, TypeVar, get_args

from springdata.domain import Direction, Page, Pageable, Sort
from sqlalchemy import delete, func, select
from sqlalchemy.orm import DeclarativeMeta, Session
from sqlalchemy.sql import Select

from opalg.store.entities import ReproduceRecord, WeingartenRecord
from opalg.store.utils import EntityInformation

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=DeclarativeMeta)
ID = TypeVar("ID")


class CrudRepository(Generic[T, ID]):
    """
    Generic create/read/delete access to one record class, the class being read from the
    subclass' generic base.
    """

    def __init__(self, session: Session):
        if session is None:
            raise ValueError("Session must not be None")
        self._orm_class = get_args(self.__orig_bases__[0])[0]
        self._session = session
        self._entity_information = EntityInformation[T, ID](self._orm_class)
        self._logger = logger.getChild(type(self).__name__)

    def count(self) -> int:
        return self._count(select(self._orm_class))

    def clear(self) -> None:
        self._session.execute(delete(self._orm_class))

    def delete_by_id(self, id_: ID) -> None:
        """
        Deletes the record with the given id, ignoring unknown ids.

        :raises ValueError: if id is None.
        """
        if id_ is None:
            raise ValueError("ID must not be None")
        self._session.execute(delete(self._orm_class).where(self._entity_information.id_attribute == id_))

    def exists_by_id(self, id_: ID) -> bool:
        if id_ is None:
            raise ValueError("ID must not be None")
        return self.find_by_id(id_) is not None

    def find_by_id(self, id_: ID) -> Optional[T]:
        return self._session.get(self._orm_class, id_)

    def find_all(self, sort: Optional[Sort] = None) -> List[T]:
        """
        Returns every record, ordered by ``sort`` when given.
        """
        statement = self._ordered(select(self._orm_class), sort)
        return list(self._session.execute(statement).scalars().all())

    def save(self, entity: T) -> T:
        """
        Adds a record, or copies its columns onto the stored record with the same id.

        :param entity: must not be None.
        :return: the managed record.
        :raises ValueError: if the entity is None.
        """
        if entity is None:
            raise ValueError("Entity must not be None")
        entity = self._merge(entity)
        self._session.add(entity)
        return entity

    def save_all(self, entities: List[T]) -> List[T]:
        if entities is None or any(e is None for e in entities):
            raise ValueError("Entities or one of its elements must not be None")
        return [self.save(e) for e in entities]

    def _count(self, statement: Select) -> int:
        statement = statement.with_only_columns(func.count(self._entity_information.id_attribute))
        return self._session.execute(statement).scalar()

    def _ordered(self, statement: Select, sort: Optional[Sort]) -> Select:
        if sort is None:
            return statement
        clauses = []
        for order in sort.orders:
            column = getattr(self._orm_class, order.property)
            clauses.append(column.asc() if order.is_ascending() else column.desc())
        return statement.order_by(*clauses)

    def _merge(self, entity: T) -> T:
        if self._entity_information.is_new(entity):
            return entity
        stored = self._session.get(self._orm_class, self._entity_information.get_id(entity))
        if stored is None:
            return entity
        for name in self._entity_information.attribute_names:
            setattr(stored, name, getattr(entity, name))
        return stored


class PagingRepository(Generic[T, ID], CrudRepository[T, ID]):
    def find_page(self, pageable: Pageable, sort: Optional[Sort] = None) -> Page[T]:
        """
        Returns one page of records.

        :param pageable: must not be None.
        :param sort: ordering applied before paging.
        :raises ValueError: if the pageable is None.
        """
        return self._page(select(self._orm_class), pageable, sort)

    def _page(self, statement: Select, pageable: Pageable, sort: Optional[Sort]) -> Page[T]:
        if pageable is None:
            raise ValueError("Pageable must not be None")
        total = self._count(statement)
        statement = self._ordered(statement, sort).offset(pageable.offset).limit(pageable.page_size)
        content = list(self._session.execute(statement).scalars().all())
        return Page(content, pageable, total)


class ReproduceRecordRepository(PagingRepository[ReproduceRecord, int]):
    def find_suite_page(self, suite: Optional[str], pageable: Pageable) -> Page[ReproduceRecord]:
        """
        Newest records first, restricted to one suite unless ``suite`` is None.
        """
        statement = select(ReproduceRecord)
        if suite is not None:
            statement = statement.where(ReproduceRecord.suite == suite)
        return self._page(statement, pageable, Sort.by("id", direction=Direction.DESC))


class WeingartenRecordRepository(CrudRepository[WeingartenRecord, int]):
    def find_matrix(self, category: str, k: int, n: int, word: str = "") -> Optional[WeingartenRecord]:
        statement = select(WeingartenRecord).where(
            WeingartenRecord.category == category,
            WeingartenRecord.k == k,
            WeingartenRecord.n == n,
            WeingartenRecord.word == word,
        )
        record = self._session.execute(statement).scalars().first()
        self._logger.debug("lookup %s k=%d N=%d word=%r: %s", category, k, n, word, "hit" if record else "miss")
        return record
