from typing import Generic, Tuple, TypeVar

from sqlalchemy.orm import DeclarativeMeta

T = TypeVar("T", bound=DeclarativeMeta)
ID = TypeVar("ID")


class EntityInformation(Generic[T, ID]):
    """
    Column and primary-key metadata of a mapped record class.
    """

    def __init__(self, orm_class: DeclarativeMeta):
        self._orm_class = orm_class
        self._table = orm_class.__table__

    @property
    def attribute_names(self) -> Tuple[str, ...]:
        return tuple(self._table.columns.keys())

    @property
    def id_attribute_name(self) -> str:
        keys = self._table.primary_key.columns.keys()
        if len(keys) != 1:
            raise ValueError(f"{self._orm_class.__name__} must have exactly one primary key column")
        return keys[0]

    @property
    def id_attribute(self):
        return getattr(self._orm_class, self.id_attribute_name)

    def get_id(self, entity: T) -> ID:
        return getattr(entity, self.id_attribute_name)

    def is_new(self, entity: T) -> bool:
        return self.get_id(entity) is None
