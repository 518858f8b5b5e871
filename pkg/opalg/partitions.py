"""
Set partitions of {1..k}, their classical subclasses, and the lattice calculus built on
them: join, Möbius function, kernels, and the two-row partitions used by diagrams.
"""
import logging
import re
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from dataclasses import dataclass

from opalg.config import DEFAULT_GUARDS, SizeGuards

logger = logging.getLogger(__name__)


class Color(Enum):
    WHITE = "o"
    BLACK = "*"

    @classmethod
    def parse(cls, letter: str) -> "Color":
        if letter in ("o", "∘", "w", "W"):
            return cls.WHITE
        if letter in ("*", "•", "b", "B"):
            return cls.BLACK
        raise ValueError(f"Unknown color letter {letter!r}")

    def flipped(self) -> "Color":
        return Color.BLACK if self is Color.WHITE else Color.WHITE


@dataclass(frozen=True)
class ColoredWord:
    letters: Tuple[Color, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "ColoredWord":
        return cls(tuple(Color.parse(c) for c in text if not c.isspace()))

    @classmethod
    def alternating(cls, length: int) -> "ColoredWord":
        return cls(tuple(Color.WHITE if i % 2 == 0 else Color.BLACK for i in range(length)))

    @classmethod
    def uniform(cls, length: int, color: Color = None) -> "ColoredWord":
        return cls((color or Color.WHITE,) * length)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Color]:
        return iter(self.letters)

    def __getitem__(self, i: int) -> Color:
        return self.letters[i]

    def __str__(self) -> str:
        return "".join(c.value for c in self.letters)

    def balance(self) -> int:
        """
        Number of white letters minus number of black letters.
        """
        return sum(1 if c is Color.WHITE else -1 for c in self.letters)


class PartitionClass(Enum):
    P = "P"
    P2 = "P2"
    PEVEN = "Peven"
    NC = "NC"
    NC2 = "NC2"
    NCEVEN = "NCeven"
    MATCHED_P2 = "MatchedP2"
    MATCHED_NC2 = "MatchedNC2"

    @classmethod
    def parse(cls, tag: str) -> "PartitionClass":
        for member in cls:
            if member.value.lower() == tag.lower():
                return member
        raise ValueError(f"Unknown partition class {tag!r}")

    @property
    def is_matched(self) -> bool:
        return self in (PartitionClass.MATCHED_P2, PartitionClass.MATCHED_NC2)

    @property
    def is_noncrossing(self) -> bool:
        return self in (
            PartitionClass.NC,
            PartitionClass.NC2,
            PartitionClass.NCEVEN,
            PartitionClass.MATCHED_NC2,
        )

    @property
    def is_pairing(self) -> bool:
        return self in (
            PartitionClass.P2,
            PartitionClass.NC2,
            PartitionClass.MATCHED_P2,
            PartitionClass.MATCHED_NC2,
        )


class Partition:
    """
    A partition of {1..size} with blocks stored canonically: each block ascending, blocks
    sorted by their minimum.

    :param blocks: iterable of iterables of points.
    :param size: number of points, inferred from the largest point when omitted.
    :raises ValueError: if the blocks are empty, overlap, or do not cover {1..size}.
    """

    __slots__ = ("size", "blocks", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]], size: Optional[int] = None):
        canonical = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else 0)
        if any(not b for b in canonical):
            raise ValueError("Blocks must not be empty")
        points = [x for b in canonical for x in b]
        if size is None:
            size = max(points, default=0)
        if sorted(points) != list(range(1, size + 1)):
            raise ValueError(f"Blocks must be disjoint and cover 1..{size}")
        self.size = size
        self.blocks: Tuple[Tuple[int, ...], ...] = tuple(canonical)
        self._hash = hash((self.size, self.blocks))

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "Partition":
        """
        Groups points 1..k carrying equal labels.
        """
        groups: Dict[Hashable, List[int]] = {}
        for point, label in enumerate(labels, start=1):
            groups.setdefault(label, []).append(point)
        return cls(groups.values(), len(labels))

    @classmethod
    def parse(cls, text: str, size: Optional[int] = None) -> "Partition":
        """
        Parses the block-list form, e.g. ``"{1,3}{2}"``.
        """
        blocks = re.findall(r"\{([^}]*)\}", text)
        if re.sub(r"\{[^}]*\}", "", text).strip():
            raise ValueError(f"Malformed partition text {text!r}")
        return cls(([int(x) for x in b.split(",") if x.strip()] for b in blocks), size)

    @property
    def labels(self) -> Tuple[int, ...]:
        """
        Restricted growth string: the 0-based index of the block of each point.
        """
        labels = [0] * self.size
        for index, block in enumerate(self.blocks):
            for x in block:
                labels[x - 1] = index
        return tuple(labels)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_of(self, point: int) -> Tuple[int, ...]:
        for block in self.blocks:
            if point in block:
                return block
        raise ValueError(f"Point {point} out of range 1..{self.size}")

    def refines(self, other: "Partition") -> bool:
        """
        True iff every block of self lies inside a block of other (self ≤ other).
        """
        _check_sizes(self, other)
        labels = other.labels
        return all(len({labels[x - 1] for x in block}) == 1 for block in self.blocks)

    def to_json(self) -> List[List[int]]:
        return [list(b) for b in self.blocks]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.size == other.size and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Partition") -> bool:
        return (self.size, self.labels) < (other.size, other.labels)

    def __str__(self) -> str:
        return "".join("{" + ",".join(str(x) for x in b) + "}" for b in self.blocks)

    def __repr__(self) -> str:
        return f"Partition({str(self)!r})"


def _check_sizes(p: Partition, q: Partition) -> None:
    if p.size != q.size:
        raise ValueError(f"Partition sizes differ: {p.size} != {q.size}")


def singletons(k: int) -> Partition:
    return Partition(([i] for i in range(1, k + 1)), k)


def one_block(k: int) -> Partition:
    return Partition([range(1, k + 1)] if k else [], k)


def is_noncrossing(p: Partition) -> bool:
    """
    Stack test: scanning points left to right, a point may only close the block on top.
    """
    labels = p.labels
    last = {}
    for i, label in enumerate(labels):
        last[label] = i
    stack: List[int] = []
    for i, label in enumerate(labels):
        if stack and stack[-1] == label:
            pass
        elif label in stack:
            return False
        else:
            stack.append(label)
        if last[label] == i:
            stack.pop()
    return True


def is_pairing(p: Partition) -> bool:
    return all(len(b) == 2 for b in p.blocks)


def has_even_blocks(p: Partition) -> bool:
    return all(len(b) % 2 == 0 for b in p.blocks)


def matches_colors(p: Partition, word: ColoredWord) -> bool:
    """
    True iff p is a pairing whose every pair joins a white and a black letter.
    """
    if len(word) != p.size:
        raise ValueError("Word length must equal the partition size")
    return is_pairing(p) and all(word[a - 1] is not word[b - 1] for a, b in p.blocks)


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def bell(k: int) -> int:
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def narayana(k: int, r: int) -> int:
    """
    Number of noncrossing partitions of k points with r blocks.
    """
    if k == 0:
        return int(r == 0)
    if not 1 <= r <= k:
        return 0
    return comb(k, r) * comb(k, r - 1) // k


def _restricted_growth(k: int) -> Iterator[Tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    labels = [0] * k
    maxima = [0] * k

    def extend(i: int):
        if i == k:
            yield tuple(labels)
            return
        for label in range(maxima[i - 1] + 2):
            labels[i] = label
            maxima[i] = max(maxima[i - 1], label)
            yield from extend(i + 1)

    yield from extend(1)


def _noncrossing(points: Tuple[int, ...]) -> Iterator[List[Tuple[int, ...]]]:
    """
    Noncrossing partitions of an ordered point list: the block of the first point cuts
    the remaining points into independent gaps.
    """
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for mask in range(1 << len(rest)):
        chosen = [i for i in range(len(rest)) if mask >> i & 1]
        block = (first,) + tuple(rest[i] for i in chosen)
        cuts = [-1] + chosen + [len(rest)]
        gaps = [rest[cuts[j] + 1: cuts[j + 1]] for j in range(len(cuts) - 1)]
        yield from _combine(block, gaps)


def _combine(block, gaps):
    if not gaps:
        yield [block]
        return
    for head in _noncrossing(tuple(gaps[0])):
        for tail in _combine(block, gaps[1:]):
            yield head + tail


def _pairings(points: Tuple[int, ...], noncrossing: bool) -> Iterator[List[Tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for j in range(1, len(points)):
        inner, outer = points[1:j], points[j + 1:]
        if noncrossing:
            if len(inner) % 2:
                continue
            for a in _pairings(inner, True):
                for b in _pairings(outer, True):
                    yield [(first, points[j])] + a + b
        else:
            for rest in _pairings(inner + outer, False):
                yield [(first, points[j])] + rest


@lru_cache(maxsize=None)
def _enumerate(klass: PartitionClass, k: int, word: Optional[ColoredWord]) -> Tuple[Partition, ...]:
    points = tuple(range(1, k + 1))
    if klass in (PartitionClass.P, PartitionClass.PEVEN):
        members = (Partition.from_labels(labels) for labels in _restricted_growth(k))
    elif klass in (PartitionClass.NC, PartitionClass.NCEVEN):
        members = (Partition(blocks, k) for blocks in _noncrossing(points))
    elif k % 2:
        members = iter(())
    else:
        noncrossing = klass.is_noncrossing
        members = (Partition(pairs, k) for pairs in _pairings(points, noncrossing))
    if klass in (PartitionClass.PEVEN, PartitionClass.NCEVEN):
        members = (p for p in members if has_even_blocks(p))
    if klass.is_matched:
        members = (p for p in members if matches_colors(p, word))
    return tuple(sorted(members, key=lambda p: p.labels))


def enumerate_class(
    klass: PartitionClass,
    k: int,
    word: Optional[ColoredWord] = None,
    guards: SizeGuards = DEFAULT_GUARDS,
) -> List[Partition]:
    """
    Lists the members of a partition class on k points, in restricted-growth order.

    :param klass: the class tag.
    :param k: number of points, k ≥ 0.
    :param word: coloring, required for the matched classes and of length k.
    :param guards: size guards, the ``partitions`` bound applies to the generating set.
    :return: each member exactly once.
    :raises ValueError: if k is negative or the word is missing or of the wrong length.
    """
    if k < 0:
        raise ValueError("k must not be negative")
    if klass.is_matched:
        if word is None:
            raise ValueError(f"Class {klass.value} requires a colored word")
        if len(word) != k:
            raise ValueError("Word length must equal k")
    else:
        word = None
    if klass in (PartitionClass.P, PartitionClass.PEVEN):
        guards.check("partitions", bell(k))
    elif klass in (PartitionClass.NC, PartitionClass.NCEVEN):
        guards.check("partitions", catalan(k))
    return list(_enumerate(klass, k, word))


def member_of(p: Partition, klass: PartitionClass, word: Optional[ColoredWord] = None) -> bool:
    if klass.is_noncrossing and not is_noncrossing(p):
        return False
    if klass.is_pairing and not is_pairing(p):
        return False
    if klass in (PartitionClass.PEVEN, PartitionClass.NCEVEN) and not has_even_blocks(p):
        return False
    if klass.is_matched:
        if word is None:
            raise ValueError(f"Class {klass.value} requires a colored word")
        return matches_colors(p, word)
    return True


def join(p: Partition, q: Partition) -> Partition:
    """
    Least common coarsening p ∨ q.
    """
    _check_sizes(p, q)
    parent = list(range(p.size + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in p.blocks + q.blocks:
        root = find(block[0])
        for x in block[1:]:
            parent[find(x)] = root
    return Partition.from_labels([find(x) for x in range(1, p.size + 1)])


def meet(p: Partition, q: Partition) -> Partition:
    _check_sizes(p, q)
    return Partition.from_labels(list(zip(p.labels, q.labels)))


def _interval(p: Partition, q: Partition, lattice: PartitionClass) -> List[Partition]:
    """
    All r with p ≤ r ≤ q, restricted to noncrossing r for the NC lattice.
    """
    q_labels = q.labels
    by_block: Dict[int, List[Tuple[int, ...]]] = {}
    for block in p.blocks:
        by_block.setdefault(q_labels[block[0] - 1], []).append(block)
    groups = list(by_block.values())
    results = [[]]
    for group in groups:
        extended = []
        for labels in _restricted_growth(len(group)):
            merged: Dict[int, List[int]] = {}
            for block, label in zip(group, labels):
                merged.setdefault(label, []).extend(block)
            for partial in results:
                extended.append(partial + list(merged.values()))
        results = extended
    members = [Partition(blocks, p.size) for blocks in results]
    if lattice is PartitionClass.NC:
        members = [r for r in members if is_noncrossing(r)]
    return members


@lru_cache(maxsize=None)
def _mobius(p: Partition, q: Partition, lattice: PartitionClass) -> int:
    if p == q:
        return 1
    return -sum(_mobius(p, r, lattice) for r in _interval(p, q, lattice) if r != q)


def mobius(p: Partition, q: Partition, lattice: PartitionClass = PartitionClass.P) -> int:
    """
    Möbius function of the partition lattice, or of the noncrossing lattice when
    ``lattice`` is NC, by the recurrence μ(p,q) = −Σ_{p≤r<q} μ(p,r).

    :raises ValueError: on a size mismatch or an unsupported lattice.
    """
    _check_sizes(p, q)
    if lattice not in (PartitionClass.P, PartitionClass.NC):
        raise ValueError("Möbius lattice must be P or NC")
    if lattice is PartitionClass.NC and not (is_noncrossing(p) and is_noncrossing(q)):
        raise ValueError("Both partitions must be noncrossing in the NC lattice")
    if not p.refines(q):
        return 0
    return _mobius(p, q, lattice)


def refinement_matrix(klass: PartitionClass, k: int) -> List[List[int]]:
    basis = enumerate_class(klass, k)
    return [[int(a.refines(b)) for b in basis] for a in basis]


def mobius_matrix(klass: PartitionClass, k: int) -> List[List[int]]:
    lattice = PartitionClass.NC if klass is PartitionClass.NC else PartitionClass.P
    basis = enumerate_class(klass, k)
    return [[mobius(a, b, lattice) for b in basis] for a in basis]


def fatten(p: Partition) -> Partition:
    """
    Doubles every leg: NC(k) → NC2(2k).

    :raises ValueError: if p is crossing.
    """
    if not is_noncrossing(p):
        raise ValueError("Only noncrossing partitions can be fattened")
    pairs = []
    for block in p.blocks:
        pairs.append((2 * block[0] - 1, 2 * block[-1]))
        pairs.extend((2 * a, 2 * b - 1) for a, b in zip(block, block[1:]))
    return Partition(pairs, 2 * p.size)


def shrink(q: Partition) -> Partition:
    """
    Inverse of :func:`fatten`.

    :raises ValueError: if q is not a noncrossing pairing of an even number of points.
    """
    if q.size % 2 or not is_pairing(q) or not is_noncrossing(q):
        raise ValueError("Only noncrossing pairings of an even number of points can be shrunk")
    k = q.size // 2
    parent = list(range(k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in q.blocks:
        if a % 2 == 0 and b % 2 == 1:
            parent[find(a // 2)] = find((b + 1) // 2)
    p = Partition.from_labels([find(x) for x in range(1, k + 1)])
    if fatten(p) != q:
        raise ValueError(f"{q} is not the fattening of a noncrossing partition")
    return p


def kernel(indices: Sequence[Hashable]) -> Partition:
    return Partition.from_labels(indices)


def delta(p: Partition, indices: Sequence[Hashable]) -> int:
    """
    Kronecker symbol δ_p(i): 1 iff indices are constant on every block of p.
    """
    if len(indices) != p.size:
        raise ValueError("Index count must equal the partition size")
    return int(all(len({indices[x - 1] for x in block}) == 1 for block in p.blocks))


class TwoRowPartition:
    """
    A partition of k upper and l lower points, stored as a one-row partition of k+l points
    numbered clockwise from the top left: upper j is point j, lower j (left to right) is
    point k+l+1−j.
    """

    def __init__(self, upper: int, lower: int, partition: Partition):
        if partition.size != upper + lower:
            raise ValueError("Partition size must equal upper + lower")
        self.upper = upper
        self.lower = lower
        self.partition = partition

    @classmethod
    def from_rows(cls, upper: Sequence[Hashable], lower: Sequence[Hashable]) -> "TwoRowPartition":
        """
        Builds from block labels of the upper row and of the lower row (left to right).
        """
        labels = list(upper) + list(reversed(lower))
        return cls(len(upper), len(lower), Partition.from_labels(labels))

    def upper_point(self, j: int) -> int:
        return j

    def lower_point(self, j: int) -> int:
        return self.upper + self.lower + 1 - j

    def rows(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        labels = self.partition.labels
        upper = tuple(labels[self.upper_point(j) - 1] for j in range(1, self.upper + 1))
        lower = tuple(labels[self.lower_point(j) - 1] for j in range(1, self.lower + 1))
        return upper, lower

    def turn_upside_down(self) -> "TwoRowPartition":
        upper, lower = self.rows()
        return TwoRowPartition.from_rows(lower, upper)

    def tensor(self, other: "TwoRowPartition") -> "TwoRowPartition":
        """
        Horizontal concatenation, self on the left.
        """
        a_upper, a_lower = self.rows()
        b_upper, b_lower = other.rows()
        return TwoRowPartition.from_rows(
            [("a", x) for x in a_upper] + [("b", x) for x in b_upper],
            [("a", x) for x in a_lower] + [("b", x) for x in b_lower],
        )

    def compose(self, other: "TwoRowPartition") -> Tuple["TwoRowPartition", int]:
        """
        Vertical concatenation with self on top of other.

        :return: the composite and the number of components made only of middle points.
        :raises ValueError: if self's lower row and other's upper row differ in length.
        """
        result, loops = self.stack(other)
        return result, len(loops)

    def stack(self, other: "TwoRowPartition") -> Tuple["TwoRowPartition", List[Tuple[int, ...]]]:
        """
        Like :meth:`compose`, but lists each removed middle component by the middle
        positions (1-based, left to right) it passes through.
        """
        if self.lower != other.upper:
            raise ValueError("Lower row of the top partition must match the upper row below")
        a_upper, a_lower = self.rows()
        b_upper, b_lower = other.rows()
        parent: Dict[Hashable, Hashable] = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for a, b in zip(a_lower, b_upper):
            union(("a", a), ("b", b))
        upper = [find(("a", x)) for x in a_upper]
        lower = [find(("b", x)) for x in b_lower]
        external = set(upper) | set(lower)
        loops: Dict[Hashable, List[int]] = {}
        for position, x in enumerate(a_lower, start=1):
            root = find(("a", x))
            if root not in external:
                loops.setdefault(root, []).append(position)
        return TwoRowPartition.from_rows(upper, lower), [tuple(v) for v in loops.values()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoRowPartition):
            return NotImplemented
        return (self.upper, self.lower, self.partition) == (other.upper, other.lower, other.partition)

    def __hash__(self) -> int:
        return hash((self.upper, self.lower, self.partition))

    def __str__(self) -> str:
        return f"{self.upper}:{self.lower}:{self.partition}"

    def __repr__(self) -> str:
        return f"TwoRowPartition({self.upper}, {self.lower}, {str(self.partition)!r})"
