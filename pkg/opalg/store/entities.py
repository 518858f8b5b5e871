from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Integer, String, Text, UniqueConstraint, create_engine
from sqlalchemy.orm import Session, declarative_base

Base = declarative_base()


class ReproduceRecord(Base):
    """
    One acceptance criterion of a reproduce run.
    """

    id: int = Column(Integer, primary_key=True)
    suite: str = Column(String(64), nullable=False, index=True)
    criterion: str = Column(String(255), nullable=False)
    measured: str = Column(String(255))
    expected: str = Column(String(255))
    passed: bool = Column(Boolean, nullable=False)
    # unsigned 64-bit seeds overflow a signed INTEGER column
    seed: str = Column(String(20))
    created: datetime = Column(DateTime, default=datetime.utcnow)

    __tablename__ = "reproduce_record"


class WeingartenRecord(Base):
    """
    An exact Weingarten matrix, its entries kept as a JSON list of "p/q" rows.
    """

    id: int = Column(Integer, primary_key=True)
    category: str = Column(String(16), nullable=False)
    k: int = Column(Integer, nullable=False)
    n: int = Column(Integer, nullable=False)
    word: str = Column(String(64), nullable=False, default="")
    basis: str = Column(Text, nullable=False)
    entries: str = Column(Text, nullable=False)

    __tablename__ = "weingarten_record"
    __table_args__ = (UniqueConstraint("category", "k", "n", "word"),)


def open_session(url: str) -> Session:
    """
    Opens a session on the given database, creating the tables when missing.

    :param url: SQLAlchemy database URL, must not be None.
    :return: a new session.
    :raises ValueError: if the URL is None.
    """
    if url is None:
        raise ValueError("Database URL must not be None")
    engine = create_engine(url)
    Base.metadata.create_all(engine)
    return Session(bind=engine)
