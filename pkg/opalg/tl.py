"""
Exact arithmetic in the Temperley-Lieb algebra TL(k) and the Fuss-Catalan algebra FC(k).

Diagrams are :class:`~opalg.partitions.TwoRowPartition` pairings whose points are numbered
clockwise from the top left. An element is a finite rational combination of diagrams
together with its loop value; Fuss-Catalan elements carry one loop value per color.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from opalg import linalg
from opalg.exceptions import MismatchError
from opalg.partitions import (
    Partition,
    PartitionClass,
    TwoRowPartition,
    catalan,
    enumerate_class,
    is_noncrossing,
)

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def fc_color(position: int) -> str:
    """
    Color of the j-th point of a Fuss-Catalan row, the pattern being ∘••∘∘••∘…
    """
    return "white" if position % 4 in (0, 1) else "black"


def _clockwise_color(point: int, side: int) -> str:
    position = point if point <= side else 2 * side + 1 - point
    return fc_color(position)


class DiagramElement:
    """
    A rational combination of k-diagrams.

    :param k: number of strands, the points per side being k for TL and 2k for FC.
    :param terms: mapping from diagram to coefficient, zero coefficients are dropped.
    :param delta: loop value, the white loop value for Fuss-Catalan elements.
    :param black: black loop value, given exactly for Fuss-Catalan elements.
    """

    def __init__(
        self,
        k: int,
        terms: Mapping[TwoRowPartition, Rational],
        delta: Rational,
        black: Optional[Rational] = None,
    ):
        if k < 0:
            raise ValueError("k must not be negative")
        if delta is None:
            raise ValueError("Delta must not be None")
        self.k = k
        self.delta = Fraction(delta)
        self.black = None if black is None else Fraction(black)
        side = self.side
        cleaned: Dict[TwoRowPartition, Fraction] = {}
        for diagram, coefficient in terms.items():
            if diagram.upper != side or diagram.lower != side:
                raise MismatchError(f"Diagram {diagram} does not have {side} points per side")
            coefficient = Fraction(coefficient)
            if coefficient:
                cleaned[diagram] = cleaned.get(diagram, Fraction(0)) + coefficient
        self.terms = {d: c for d, c in cleaned.items() if c}

    @property
    def is_fuss_catalan(self) -> bool:
        return self.black is not None

    @property
    def side(self) -> int:
        return 2 * self.k if self.is_fuss_catalan else self.k

    def _like(self, terms: Mapping[TwoRowPartition, Rational]) -> "DiagramElement":
        return DiagramElement(self.k, terms, self.delta, self.black)

    def _check(self, other: "DiagramElement") -> None:
        if self.k != other.k:
            raise MismatchError(f"Elements live in different sizes: {self.k} != {other.k}")
        if (self.delta, self.black) != (other.delta, other.black):
            raise MismatchError("Elements have different loop values")

    def loop_value(self, loop: Sequence[int]) -> Fraction:
        if not self.is_fuss_catalan:
            return self.delta
        return self.delta if fc_color(loop[0]) == "white" else self.black

    def __add__(self, other: "DiagramElement") -> "DiagramElement":
        self._check(other)
        terms = dict(self.terms)
        for diagram, coefficient in other.terms.items():
            terms[diagram] = terms.get(diagram, Fraction(0)) + coefficient
        return self._like(terms)

    def __neg__(self) -> "DiagramElement":
        return self._like({d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "DiagramElement") -> "DiagramElement":
        return self + (-other)

    def __mul__(self, other) -> "DiagramElement":
        if isinstance(other, DiagramElement):
            return compose(self, other)
        scalar = Fraction(other)
        return self._like({d: c * scalar for d, c in self.terms.items()})

    def __rmul__(self, scalar) -> "DiagramElement":
        return self * scalar

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramElement):
            return NotImplemented
        return (self.k, self.delta, self.black, self.terms) == (other.k, other.delta, other.black, other.terms)

    def __hash__(self):
        return hash((self.k, self.delta, self.black, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> Dict[str, str]:
        return {str(d.partition): _fraction_text(c) for d, c in sorted(self.terms.items(), key=_term_key)}

    def __repr__(self) -> str:
        return f"DiagramElement(k={self.k}, delta={self.delta}, black={self.black}, terms={self.to_json()})"


def _term_key(item):
    return item[0].partition.labels


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def compose(a: DiagramElement, b: DiagramElement) -> DiagramElement:
    """
    Product ab, a stacked on top of b; each closed loop contributes its loop value.

    :raises MismatchError: if the sizes or the loop values differ.
    """
    a._check(b)
    terms: Dict[TwoRowPartition, Fraction] = {}
    for top, x in a.terms.items():
        for bottom, y in b.terms.items():
            diagram, loops = top.stack(bottom)
            weight = x * y
            for loop in loops:
                weight *= a.loop_value(loop)
            terms[diagram] = terms.get(diagram, Fraction(0)) + weight
    return a._like(terms)


def involution(x: DiagramElement) -> DiagramElement:
    """
    Turns every diagram upside down; coefficients are rational, hence self-conjugate.
    """
    return x._like({d.turn_upside_down(): c for d, c in x.terms.items()})


def _closure_loops(diagram: TwoRowPartition) -> List[int]:
    """
    Closes upper j to lower j and returns, per loop, one row position it meets.
    """
    side = diagram.upper
    labels = diagram.partition.labels
    parent = list(range(len(set(labels))))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for j in range(1, side + 1):
        a = find(labels[diagram.upper_point(j) - 1])
        b = find(labels[diagram.lower_point(j) - 1])
        if a != b:
            parent[a] = b
    first: Dict[int, int] = {}
    for j in range(1, side + 1):
        first.setdefault(find(labels[j - 1]), j)
    return list(first.values())


def markov_trace(x: DiagramElement) -> Fraction:
    """
    Normalized trace obtained by closing diagrams on the right: tr(d) = δ^{c(d)−k}, with
    colors counted separately for Fuss-Catalan diagrams.
    """
    total = Fraction(0)
    for diagram, coefficient in x.terms.items():
        loops = _closure_loops(diagram)
        if x.is_fuss_catalan:
            white = sum(1 for j in loops if fc_color(j) == "white")
            value = x.delta ** (white - x.k) * x.black ** (len(loops) - white - x.k)
        else:
            value = x.delta ** (len(loops) - x.k)
        total += coefficient * value
    return total


def _straight_labels(side: int) -> List[Tuple[str, int]]:
    return [("s", j) for j in range(1, side + 1)]


def identity_diagram(side: int) -> TwoRowPartition:
    labels = _straight_labels(side)
    return TwoRowPartition.from_rows(labels, labels)


def cap_diagram(i: int, side: int) -> TwoRowPartition:
    """
    The diagram ε_i: caps joining points i and i+1 on both rows, other strands vertical.
    """
    upper = _straight_labels(side)
    lower = _straight_labels(side)
    upper[i - 1] = upper[i] = ("u", i)
    lower[i - 1] = lower[i] = ("l", i)
    return TwoRowPartition.from_rows(upper, lower)


def identity(k: int, delta: Rational, black: Optional[Rational] = None) -> DiagramElement:
    side = 2 * k if black is not None else k
    return DiagramElement(k, {identity_diagram(side): 1}, delta, black)


def epsilon(i: int, k: int, delta: Rational) -> DiagramElement:
    if not 1 <= i <= k - 1:
        raise ValueError(f"Index must be in 1..{k - 1}, got {i}")
    return DiagramElement(k, {cap_diagram(i, k): 1}, delta)


def jones_projection(i: int, k: int, delta: Rational) -> DiagramElement:
    """
    The Jones projection e_i = δ^{−1}·ε_i of TL(k).

    :raises ValueError: if i is outside 1..k−1 or delta is zero.
    """
    if Fraction(delta) == 0:
        raise ValueError("Delta must be nonzero")
    return epsilon(i, k, delta) * (1 / Fraction(delta))


def fc_projection(i: int, k: int, white: Rational, black: Rational) -> DiagramElement:
    """
    Projection of FC(k) capping the like-colored neighbours i, i+1 (i even), divided by the
    value of the loop the cap closes.
    """
    side = 2 * k
    if i % 2 or not 2 <= i <= side - 2:
        raise ValueError(f"Index must be even and in 2..{side - 2}, got {i}")
    loop = Fraction(white) if fc_color(i) == "white" else Fraction(black)
    if loop == 0:
        raise ValueError("Loop value must be nonzero")
    return DiagramElement(k, {cap_diagram(i, side): 1 / loop}, white, black)


def generators(k: int, delta: Rational) -> List[DiagramElement]:
    return [jones_projection(i, k, delta) for i in range(1, k)]


def fc_generators(k: int, white: Rational, black: Rational) -> List[DiagramElement]:
    return [fc_projection(i, k, white, black) for i in range(2, 2 * k - 1, 2)]


def random_word(k: int, delta: Rational, length: int, rng: np.random.Generator) -> DiagramElement:
    """
    Product of ``length`` Jones projections drawn uniformly from e_1..e_{k−1}.
    """
    word = identity(k, delta)
    for i in rng.integers(1, k, size=length) if k > 1 else ():
        word = word * jones_projection(int(i), k, delta)
    return word


@lru_cache(maxsize=None)
def diagrams(k: int) -> Tuple[TwoRowPartition, ...]:
    """
    Basis of TL(k): noncrossing pairings of the 2k boundary points.
    """
    return tuple(TwoRowPartition(k, k, p) for p in enumerate_class(PartitionClass.NC2, 2 * k))


@lru_cache(maxsize=None)
def fc_diagrams(k: int) -> Tuple[TwoRowPartition, ...]:
    """
    Basis of FC(k): noncrossing pairings of 2×2k points joining like colors only.
    """
    side = 2 * k
    members = []
    for p in enumerate_class(PartitionClass.NC2, 2 * side):
        if all(_clockwise_color(a, side) == _clockwise_color(b, side) for a, b in p.blocks):
            members.append(TwoRowPartition(side, side, p))
    return tuple(members)


def dimension(k: int, fuss_catalan: bool = False) -> int:
    if k < 0:
        raise ValueError("k must not be negative")
    if fuss_catalan:
        return comb(3 * k, k) // (2 * k + 1)
    return catalan(k)


def fc_dimension_brute_force(k: int) -> int:
    """
    Counts like-colored perfect matchings of 2×2k points with no two crossing chords,
    without going through the partition enumerators.
    """
    side = 2 * k
    colors = {p: _clockwise_color(p, side) for p in range(1, 2 * side + 1)}

    def count(points: Tuple[int, ...], chords: Tuple[Tuple[int, int], ...]) -> int:
        if not points:
            return 1
        first, total = points[0], 0
        for other in points[1:]:
            if colors[other] != colors[first]:
                continue
            if any(a < first < b < other or first < a < other < b for a, b in chords):
                continue
            rest = tuple(p for p in points if p not in (first, other))
            total += count(rest, chords + ((first, other),))
        return total

    return count(tuple(range(1, 2 * side + 1)), ())


def basis(k: int, delta: Rational, black: Optional[Rational] = None) -> List[DiagramElement]:
    members = fc_diagrams(k) if black is not None else diagrams(k)
    return [DiagramElement(k, {d: 1}, delta, black) for d in members]


def gram_matrix(k: int, delta: Rational, black: Optional[Rational] = None) -> List[List[Fraction]]:
    """
    Matrix of <a,b> = tr(ab*) over the diagram basis.
    """
    elements = basis(k, delta, black)
    return [[markov_trace(a * involution(b)) for b in elements] for a in elements]


def gram_determinant(k: int, delta: Rational, black: Optional[Rational] = None) -> Fraction:
    return linalg.determinant(gram_matrix(k, delta, black))


@dataclass(frozen=True)
class RelationCheck:
    name: str
    passed: bool
    detail: str = ""


def check_relations(
    k: int, delta: Rational, rng: Optional[np.random.Generator] = None, words: int = 50
) -> List[RelationCheck]:
    """
    Verifies the Temperley-Lieb relations and the Markov property of the trace in TL(k).

    :param k: number of strands, k ≥ 1.
    :param delta: nonzero loop value.
    :param rng: source of the random words used by the Markov check, seeded when omitted.
    :param words: number of random words.
    :return: one entry per relation family.
    """
    if k < 1:
        raise ValueError("k must be positive")
    delta = Fraction(delta)
    rng = rng if rng is not None else np.random.default_rng(0)
    e = generators(k, delta)
    checks = [
        RelationCheck("idempotent", all(x * x == x for x in e)),
        RelationCheck("self-adjoint", all(involution(x) == x for x in e)),
        RelationCheck(
            "far-commuting",
            all(e[i] * e[j] == e[j] * e[i] for i, j in combinations(range(len(e)), 2) if j - i >= 2),
        ),
        RelationCheck(
            "braid",
            all(
                e[i] * e[j] * e[i] == e[i] * delta ** -2
                for i in range(len(e))
                for j in (i - 1, i + 1)
                if 0 <= j < len(e)
            ),
        ),
        RelationCheck("unit-trace", markov_trace(identity(k, delta)) == 1),
    ]
    if k >= 2:
        failures = 0
        for _ in range(words):
            n = int(rng.integers(1, k))
            word = _word_below(k, n, delta, rng)
            if markov_trace(word * e[n - 1]) != delta ** -2 * markov_trace(word):
                failures += 1
        checks.append(RelationCheck("markov", failures == 0, f"{failures} of {words} words failed"))
    for check in checks:
        logger.info("TL(%d) delta=%s %s: %s", k, delta, check.name, "ok" if check.passed else "FAILED")
    return checks


def _word_below(k: int, n: int, delta: Fraction, rng: np.random.Generator) -> DiagramElement:
    """
    Random word in e_1..e_{n−1} (the identity when n = 1).
    """
    word = identity(k, delta)
    if n > 1:
        for i in rng.integers(1, n, size=4):
            word = word * jones_projection(int(i), k, delta)
    return word


def from_pairing(partition: Partition, k: int, delta: Rational) -> DiagramElement:
    """
    Wraps a noncrossing pairing of 2k clockwise points as a TL(k) basis element.
    """
    if partition.size != 2 * k or not is_noncrossing(partition):
        raise ValueError("Partition must be a noncrossing pairing of 2k points")
    return DiagramElement(k, {TwoRowPartition(k, k, partition): 1}, delta)
