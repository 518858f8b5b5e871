"""
Gram and Weingarten matrices of the easy quantum groups, with exact Haar integration of
coordinate words and the moments of truncated characters.
"""
import json
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from opalg import linalg
from opalg.config import DEFAULT_GUARDS, SizeGuards
from opalg.exceptions import MismatchError, SingularGramError
from opalg.partitions import (
    ColoredWord,
    Partition,
    PartitionClass,
    delta,
    enumerate_class,
    join,
)
from opalg.store.entities import WeingartenRecord

logger = logging.getLogger(__name__)

GROUPS = {
    "S_N": PartitionClass.P,
    "O_N": PartitionClass.P2,
    "H_N": PartitionClass.PEVEN,
    "U_N": PartitionClass.MATCHED_P2,
    "S_N^+": PartitionClass.NC,
    "O_N^+": PartitionClass.NC2,
    "H_N^+": PartitionClass.NCEVEN,
    "U_N^+": PartitionClass.MATCHED_NC2,
}


@dataclass(frozen=True)
class EasyCategory:
    """
    The category of partitions D attached to an easy quantum group.
    """

    klass: PartitionClass

    @classmethod
    def parse(cls, text: str) -> "EasyCategory":
        """
        Accepts a class tag ("P2") or a group name ("O_N").
        """
        if text in GROUPS:
            return cls(GROUPS[text])
        return cls(PartitionClass.parse(text))

    @classmethod
    def for_group(cls, group: str) -> "EasyCategory":
        if group not in GROUPS:
            raise ValueError(f"Unknown group {group!r}, expected one of {', '.join(GROUPS)}")
        return cls(GROUPS[group])

    @property
    def colored(self) -> bool:
        return self.klass.is_matched

    @property
    def name(self) -> str:
        return self.klass.value

    def word_for(self, k: int, word: Optional[ColoredWord]) -> Optional[ColoredWord]:
        if not self.colored:
            return None
        word = word if word is not None else ColoredWord.alternating(k)
        if len(word) != k:
            raise MismatchError(f"Word length {len(word)} differs from k={k}")
        return word

    def basis(self, k: int, word: Optional[ColoredWord] = None, guards: SizeGuards = DEFAULT_GUARDS) -> List[Partition]:
        """
        D(k), filtered by the colors of ``word`` for the matched categories.
        """
        members = enumerate_class(self.klass, k, self.word_for(k, word), guards)
        guards.check("gram_basis", len(members))
        return members


@dataclass(frozen=True)
class GramMatrix:
    k: int
    n: int
    basis: Tuple[Partition, ...]
    entries: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class WeingartenMatrix:
    k: int
    n: int
    basis: Tuple[Partition, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]

    def to_json(self) -> Dict:
        return {
            "basis": [str(p) for p in self.basis],
            "entries": [[_fraction_text(x) for x in row] for row in self.entries],
        }


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _check_sizes(k: int, n: int) -> None:
    if k < 0:
        raise ValueError("k must not be negative")
    if n < 1:
        raise ValueError("N must be positive")


def gram(
    cat: EasyCategory, k: int, n: int, word: Optional[ColoredWord] = None, guards: SizeGuards = DEFAULT_GUARDS
) -> GramMatrix:
    """
    G(π, σ) = N^{|π∨σ|} over D(k).
    """
    _check_sizes(k, n)
    basis = tuple(cat.basis(k, word, guards))
    entries = tuple(tuple(n ** join(p, q).block_count for q in basis) for p in basis)
    return GramMatrix(k, n, basis, entries)


def falling_factorial(n: int, r: int) -> int:
    result = 1
    for i in range(r):
        result *= n - i
    return result


def gram_determinant(k: int, n: int) -> Tuple[int, int]:
    """
    Determinant of the Gram matrix of P(k), as the product Π_π N(N−1)…(N−|π|+1) and by
    exact elimination.

    :return: (product formula, direct determinant), equal by construction of the test suite.
    """
    matrix = gram(EasyCategory(PartitionClass.P), k, n)
    product = 1
    for p in matrix.basis:
        product *= falling_factorial(n, p.block_count)
    direct = linalg.determinant(matrix.entries)
    return product, int(direct)


def _invert(matrix: GramMatrix, cat: EasyCategory) -> WeingartenMatrix:
    if not matrix.basis:
        return WeingartenMatrix(matrix.k, matrix.n, (), ())
    try:
        inverse = linalg.inverse(matrix.entries)
    except ZeroDivisionError:
        size = len(matrix.basis)
        rank = linalg.rank(matrix.entries)
        logger.warning("singular Gram matrix for %s k=%d N=%d, rank %d of %d", cat.name, matrix.k, matrix.n, rank, size)
        raise SingularGramError(rank, size)
    return WeingartenMatrix(matrix.k, matrix.n, matrix.basis, tuple(tuple(row) for row in inverse))


class WeingartenCache:
    """
    Thread-safe memo of Weingarten matrices keyed by (category, k, N, word).

    When a repository is attached, misses are looked up in it before being computed, and
    computed matrices are written back.
    """

    def __init__(self, repository=None):
        self._lock = threading.Lock()
        self._writer = threading.Lock()
        self._matrices: Dict[Tuple, WeingartenMatrix] = {}
        self._repository = repository
        self._logger = logger.getChild(type(self).__name__)

    def __len__(self) -> int:
        with self._lock:
            return len(self._matrices)

    def clear(self) -> None:
        with self._lock:
            self._matrices.clear()

    def get(
        self,
        cat: EasyCategory,
        k: int,
        n: int,
        word: Optional[ColoredWord] = None,
        guards: SizeGuards = DEFAULT_GUARDS,
    ) -> WeingartenMatrix:
        word = cat.word_for(k, word)
        key = (cat.klass, k, n, str(word or ""))
        with self._lock:
            cached = self._matrices.get(key)
        if cached is not None:
            self._logger.debug("hit %s", key)
            return cached
        self._logger.debug("miss %s", key)
        # one miss at a time: the repository session is not shared between threads
        with self._writer:
            with self._lock:
                cached = self._matrices.get(key)
            if cached is not None:
                return cached
            matrix = self._load(cat, k, n, word)
            if matrix is None:
                matrix = _invert(gram(cat, k, n, word, guards), cat)
                self._store(cat, matrix, word)
            with self._lock:
                self._matrices[key] = matrix
            return matrix

    def _load(self, cat: EasyCategory, k: int, n: int, word: Optional[ColoredWord]) -> Optional[WeingartenMatrix]:
        if self._repository is None:
            return None
        record = self._repository.find_matrix(cat.name, k, n, str(word or ""))
        if record is None:
            return None
        basis = tuple(Partition.parse(text, k) for text in json.loads(record.basis))
        entries = tuple(tuple(Fraction(x) for x in row) for row in json.loads(record.entries))
        return WeingartenMatrix(k, n, basis, entries)

    def _store(self, cat: EasyCategory, matrix: WeingartenMatrix, word: Optional[ColoredWord]) -> None:
        if self._repository is None:
            return
        data = matrix.to_json()
        self._repository.save(
            WeingartenRecord(
                category=cat.name,
                k=matrix.k,
                n=matrix.n,
                word=str(word or ""),
                basis=json.dumps(data["basis"]),
                entries=json.dumps(data["entries"]),
            )
        )


_cache = WeingartenCache()


def default_cache() -> WeingartenCache:
    return _cache


def weingarten(
    cat: EasyCategory,
    k: int,
    n: int,
    word: Optional[ColoredWord] = None,
    guards: SizeGuards = DEFAULT_GUARDS,
    cache: Optional[WeingartenCache] = None,
) -> WeingartenMatrix:
    """
    W = G^{−1}, exact.

    :raises SingularGramError: if the Gram matrix is singular, with its exact rank.
    :raises SizeGuardError: if |D(k)| exceeds the ``gram_basis`` guard.
    """
    _check_sizes(k, n)
    return (cache if cache is not None else _cache).get(cat, k, n, word, guards)


def integrate(
    cat: EasyCategory,
    n: int,
    rows: Sequence[int],
    cols: Sequence[int],
    colors: Optional[ColoredWord] = None,
    guards: SizeGuards = DEFAULT_GUARDS,
    cache: Optional[WeingartenCache] = None,
) -> Fraction:
    """
    Haar integral of u_{i_1 j_1}^{e_1} … u_{i_k j_k}^{e_k}.

    :param cat: the easy category.
    :param n: N.
    :param rows: row indices i, each in 1..N.
    :param cols: column indices j, same length.
    :param colors: exponents e for the matched categories, all white by default.
    :return: Σ_{π,σ∈D(k)} δ_π(i) δ_σ(j) W(π, σ).
    """
    if len(rows) != len(cols):
        raise MismatchError("Row and column words must have the same length")
    if any(not 1 <= x <= n for x in list(rows) + list(cols)):
        raise ValueError(f"Indices must lie in 1..{n}")
    k = len(rows)
    if cat.colored and colors is None:
        colors = ColoredWord.uniform(k)
    matrix = weingarten(cat, k, n, colors, guards, cache)
    left = [delta(p, rows) for p in matrix.basis]
    right = [delta(q, cols) for q in matrix.basis]
    total = Fraction(0)
    for a, row in zip(left, matrix.entries):
        if a:
            total += sum((w for b, w in zip(right, row) if b), Fraction(0))
    return total


def character_moments(
    cat: EasyCategory,
    n: int,
    p: int,
    t: Fraction = Fraction(1),
    word: Optional[ColoredWord] = None,
    guards: SizeGuards = DEFAULT_GUARDS,
    cache: Optional[WeingartenCache] = None,
) -> Fraction:
    """
    p-th moment of the truncated character χ_t = Σ_{i ≤ tN} u_ii, that is
    Σ_{π,σ∈D(p)} (tN)^{|π∨σ|} W(π, σ). Matched categories use the alternating word unless
    ``word`` is given.

    :raises ValueError: if t is outside (0, 1] or tN is not an integer.
    """
    t = Fraction(t)
    if not 0 < t <= 1:
        raise ValueError("t must lie in (0, 1]")
    truncation = t * n
    if truncation.denominator != 1:
        raise ValueError(f"tN must be an integer, got {truncation}")
    matrix = weingarten(cat, p, n, word, guards, cache)
    total = Fraction(0)
    for i, a in enumerate(matrix.basis):
        for j, b in enumerate(matrix.basis):
            total += truncation ** join(a, b).block_count * matrix.entries[i][j]
    return total


def character_limit(cat: EasyCategory, p: int, t: Fraction = Fraction(1), word: Optional[ColoredWord] = None) -> Fraction:
    """
    Σ_{π∈D(p)} t^{|π|}, the N → ∞ limit of :func:`character_moments`.
    """
    t = Fraction(t)
    return sum((t ** q.block_count for q in cat.basis(p, word)), Fraction(0))


@dataclass(frozen=True)
class CharacterRow:
    n: int
    value: Fraction
    limit: Fraction

    @property
    def gap(self) -> Fraction:
        return abs(self.value - self.limit)


def truncated_character_check(
    cat: EasyCategory, p: int, t: Fraction, ns: Sequence[int], guards: SizeGuards = DEFAULT_GUARDS
) -> List[CharacterRow]:
    """
    Tabulates the exact moments for each N in ``ns`` against the limit; N with tN not an
    integer or a singular Gram matrix are skipped.
    """
    limit = character_limit(cat, p, t)
    rows = []
    for n in ns:
        if (Fraction(t) * n).denominator != 1:
            logger.warning("skipping N=%d: tN is not an integer for t=%s", n, t)
            continue
        try:
            value = character_moments(cat, n, p, t, guards=guards)
        except SingularGramError as e:
            logger.warning("skipping N=%d: %s", n, e)
            continue
        rows.append(CharacterRow(n, value, limit))
    return rows
