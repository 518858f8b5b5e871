import logging
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Optional

from opalg.exceptions import SizeGuardError

logger = logging.getLogger(__name__)

THREADS_ENV = "OPALG_THREADS"
DATABASE_ENV = "OPALG_DB"

DEFAULT_SEED = 42
FORMATS = ("pretty", "json", "csv")


@dataclass(frozen=True)
class SizeGuards:
    """
    Upper bounds refused rather than truncated.

    :param enumeration: budget of (MN)^p tuples visited by Kesten enumeration.
    :param linear_system: bound on N^{max(k,l)+2} for the intertwiner equation.
    :param gram_basis: bound on the number of partitions indexing a Gram matrix.
    :param cesaro: bound on N^{2p} for Cesàro averaging.
    :param partitions: bound on the size of an enumerated partition set.
    """

    enumeration: int = 10**8
    linear_system: int = 10**4
    gram_basis: int = 203
    cesaro: int = 4096
    partitions: int = 10**6

    def check(self, guard: str, value: int) -> None:
        """
        Raises when ``value`` exceeds the named guard.

        :param guard: one of the field names.
        :param value: the size about to be computed.
        :raises SizeGuardError: if the value is above the limit.
        """
        limit = getattr(self, guard)
        if value > limit:
            logger.warning("refusing %s=%d, guard limit is %d", guard, value, limit)
            raise SizeGuardError(guard, value, limit)

    def with_overrides(self, overrides: Dict[str, int]) -> "SizeGuards":
        """
        Returns a copy with some limits replaced.

        :param overrides: mapping from guard name to new limit.
        :raises ValueError: on an unknown guard name.
        """
        names = {f.name for f in fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise ValueError(f"Unknown size guard(s): {', '.join(sorted(unknown))}")
        return replace(self, **overrides)


DEFAULT_GUARDS = SizeGuards()


@dataclass
class RunConfig:
    subcommand: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    fmt: str = "pretty"
    output: Optional[str] = None
    guards: SizeGuards = DEFAULT_GUARDS
    database: Optional[str] = None

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise ValueError(f"Format must be one of {', '.join(FORMATS)}")


def thread_count() -> int:
    """
    Returns the number of worker threads, capped by ``OPALG_THREADS``.
    """
    default = min(4, os.cpu_count() or 1)
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be positive")
    return value


def database_url(explicit: Optional[str] = None) -> Optional[str]:
    return explicit if explicit is not None else os.environ.get(DATABASE_ENV)
