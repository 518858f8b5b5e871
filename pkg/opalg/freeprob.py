"""
Classical and free probability at the level of moments: moment-cumulant transforms,
convolutions, Cauchy and R-transform series, the catalog of laws and limit-theorem checks.

Scalar sequences are exact whenever their inputs are rational; any float input turns the
arithmetic into floats without changing the formulas.
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from scipy import integrate

from opalg.exceptions import MismatchError
from opalg.partitions import (
    Color,
    ColoredWord,
    PartitionClass,
    catalan,
    enumerate_class,
    mobius,
    narayana,
    one_block,
)
from opalg.series import FormalSeries

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, float, complex]

CLASSICAL = "classical"
FREE = "free"
KINDS = (CLASSICAL, FREE)

LAWS = (
    "gaussian",
    "poisson",
    "semicircle",
    "free-poisson",
    "complex-gaussian",
    "circular",
    "bessel",
    "free-bessel",
)

THEOREMS = ("clt", "cclt", "free-clt", "plt", "free-plt")

ATOM_TOLERANCE = 1e-9
WEIGHT_TOLERANCE = 1e-12


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"Kind must be one of {', '.join(KINDS)}, got {kind!r}")


def _tidy(value: Number) -> Number:
    """
    Drops a vanishing imaginary part left over by float arithmetic.
    """
    if isinstance(value, complex) and abs(value.imag) <= WEIGHT_TOLERANCE * max(1.0, abs(value.real)):
        return value.real
    return value


@dataclass(frozen=True)
class MomentSequence:
    """
    Moments M_1..M_K of a variable, M_0 = 1 being implicit.

    :param order: truncation order K.
    :param moments: the K moments, exact rationals or floats.
    :param colored: optional *-moments indexed by colored words of length ≤ K.
    """

    order: int
    moments: Tuple[Number, ...]
    colored: Optional[Mapping[ColoredWord, Number]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("Order must not be negative")
        if len(self.moments) != self.order:
            raise ValueError(f"Expected {self.order} moments, got {len(self.moments)}")

    @classmethod
    def of(cls, moments: Sequence[Number], colored: Optional[Mapping[ColoredWord, Number]] = None):
        return cls(len(moments), tuple(moments), colored)

    def __getitem__(self, k: int) -> Number:
        if k == 0:
            return 1
        if not 1 <= k <= self.order:
            raise IndexError(f"Moment index {k} outside 0..{self.order}")
        return self.moments[k - 1]

    def word(self, word: ColoredWord) -> Number:
        if not word:
            return 1
        if self.colored is None:
            raise ValueError("Sequence carries no colored moments")
        return self.colored[word]

    def truncate(self, order: int) -> "MomentSequence":
        colored = None
        if self.colored is not None:
            colored = {w: v for w, v in self.colored.items() if len(w) <= order}
        return MomentSequence(order, self.moments[:order], colored)

    def series(self) -> FormalSeries:
        return FormalSeries([1] + list(self.moments), self.order, "moments")


@dataclass(frozen=True)
class DiscreteMeasure:
    """
    A finitely supported measure Σ w_j δ_{z_j} on the real line or on the unit circle.

    :param atoms: (position, weight) pairs; positions within 1e−9 of each other are merged.
    :param mass: total mass, exact when all weights are rational.
    :param roots_order: set when the atoms are the s-th roots of unity with equal weights,
        letting mixed moments be evaluated exactly.
    """

    atoms: Tuple[Tuple[Number, Number], ...]
    mass: Number = 1
    roots_order: Optional[int] = None

    def __post_init__(self):
        merged: List[List] = []
        for position, weight in self.atoms:
            if weight < 0:
                raise ValueError("Weights must not be negative")
            if isinstance(position, complex) and abs(abs(position) - 1) > ATOM_TOLERANCE:
                if abs(position.imag) > ATOM_TOLERANCE:
                    raise ValueError("Complex atoms must lie on the unit circle")
                position = position.real
            for entry in merged:
                if abs(complex(entry[0]) - complex(position)) <= ATOM_TOLERANCE:
                    entry[1] += weight
                    break
            else:
                merged.append([position, weight])
        total = sum(w for _, w in merged)
        exact = all(isinstance(w, (int, Fraction)) for _, w in merged) and isinstance(self.mass, (int, Fraction))
        if exact and total != self.mass:
            raise ValueError(f"Weights sum to {total}, expected {self.mass}")
        if not exact and abs(total - self.mass) > WEIGHT_TOLERANCE * max(1, abs(self.mass)):
            raise ValueError(f"Weights sum to {total}, expected {self.mass}")
        object.__setattr__(self, "atoms", tuple((p, w) for p, w in merged))

    @classmethod
    def point_mass(cls, position: Number = 0, mass: Number = 1) -> "DiscreteMeasure":
        return cls(((position, mass),), mass)

    @classmethod
    def symmetric_bernoulli(cls) -> "DiscreteMeasure":
        return cls(((-1, Fraction(1, 2)), (1, Fraction(1, 2))))

    @classmethod
    def bernoulli(cls, p: Number) -> "DiscreteMeasure":
        """
        (1−p)δ_0 + pδ_1.
        """
        return cls(((0, 1 - p), (1, p)))

    @classmethod
    def roots_of_unity(cls, s: int, mass: Number = 1) -> "DiscreteMeasure":
        """
        mass·ε_s, the uniform measure on the s-th roots of unity scaled to the given mass.
        """
        if s < 1:
            raise ValueError("s must be positive")
        weight = Fraction(mass) / s if isinstance(mass, (int, Fraction)) else mass / s
        if s <= 2:
            positions = [1, -1][:s]
        else:
            positions = [cmath.exp(2j * math.pi * j / s) for j in range(s)]
        return cls(tuple((p, weight) for p in positions), mass, s)

    @classmethod
    def poisson(cls, t: float, atoms: int) -> "DiscreteMeasure":
        """
        Poisson law of parameter t truncated to its first ``atoms`` atoms.
        """
        weights = [math.exp(-t) * t**j / math.factorial(j) for j in range(atoms)]
        return cls(tuple((j, w) for j, w in enumerate(weights)), math.fsum(weights))

    @property
    def is_real(self) -> bool:
        return not any(isinstance(p, complex) for p, _ in self.atoms)

    def scaled(self, factor: Number) -> "DiscreteMeasure":
        """
        Multiplies every weight, and the mass, by ``factor``.
        """
        return DiscreteMeasure(
            tuple((p, w * factor) for p, w in self.atoms), self.mass * factor, self.roots_order
        )

    def without_zero(self) -> "DiscreteMeasure":
        kept = tuple((p, w) for p, w in self.atoms if abs(complex(p)) > ATOM_TOLERANCE)
        return DiscreteMeasure(kept, sum(w for _, w in kept), self.roots_order if len(kept) == len(self.atoms) else None)

    def mixed_moment(self, white: int, black: int) -> Number:
        """
        ∫ z^white · z̄^black dμ.
        """
        if self.roots_order is not None:
            return self.mass if (white - black) % self.roots_order == 0 else 0
        total: Number = 0
        for position, weight in self.atoms:
            if isinstance(position, complex):
                total += weight * position**white * position.conjugate() ** black
            else:
                total += weight * position ** (white + black)
        return _tidy(total)

    def moment(self, k: int) -> Number:
        return self.mixed_moment(k, 0)

    def word_moment(self, word: ColoredWord) -> Number:
        white = sum(1 for c in word if c is Color.WHITE)
        return self.mixed_moment(white, len(word) - white)

    def moments(self, K: int) -> MomentSequence:
        return MomentSequence.of([self.moment(k) for k in range(1, K + 1)])

    def to_json(self) -> List[Dict[str, str]]:
        return [{"position": str(p), "weight": str(w)} for p, w in self.atoms]


def characteristic_function(measure: DiscreteMeasure, x: float) -> complex:
    """
    Fourier transform Σ w_j e^{i x a_j} of a real discrete measure.

    :raises ValueError: if an atom lies off the real line.
    """
    if not measure.is_real:
        raise ValueError("Characteristic function requires real atoms")
    return sum((float(w) * cmath.exp(1j * x * float(a)) for a, w in measure.atoms), 0j)


def _power_coefficient(moments: Sequence[Number], power: int, degree: int) -> Number:
    """
    Coefficient of x^degree in (Σ_{i≥0} M_i x^i)^power, M_0 = 1.
    """
    series = [1] + list(moments[: degree])
    series += [0] * (degree + 1 - len(series))
    result: List[Number] = [1] + [0] * degree
    for _ in range(power):
        result = [sum(result[j] * series[d - j] for j in range(d + 1)) for d in range(degree + 1)]
    return result[degree]


def _moments_from_cumulants(cumulants: Sequence[Number], kind: str) -> List[Number]:
    moments: List[Number] = []
    for n in range(1, len(cumulants) + 1):
        if kind == CLASSICAL:
            value = sum(
                math.comb(n - 1, s - 1) * cumulants[s - 1] * (moments[n - s - 1] if n > s else 1)
                for s in range(1, n + 1)
            )
        else:
            value = sum(
                cumulants[s - 1] * _power_coefficient(moments, s, n - s) for s in range(1, n + 1)
            )
        moments.append(value)
    return moments


def _cumulants_from_moments(moments: Sequence[Number], kind: str) -> List[Number]:
    cumulants: List[Number] = []
    for n in range(1, len(moments) + 1):
        if kind == CLASSICAL:
            lower = sum(
                math.comb(n - 1, s - 1) * cumulants[s - 1] * moments[n - s - 1] for s in range(1, n)
            )
        else:
            lower = sum(cumulants[s - 1] * _power_coefficient(moments, s, n - s) for s in range(1, n))
        cumulants.append(moments[n - 1] - lower)
    return cumulants


def cumulants(m: MomentSequence, kind: str) -> FormalSeries:
    """
    Classical or free cumulants κ_1..κ_K as the series Σ κ_k x^k.

    :param m: the moments.
    :param kind: ``"classical"`` (sum over all partitions) or ``"free"`` (noncrossing ones).
    """
    _check_kind(kind)
    return FormalSeries([0] + _cumulants_from_moments(m.moments, kind), m.order, f"{kind}-cumulants")


def moments(c: FormalSeries, kind: str) -> MomentSequence:
    """
    Inverse of :func:`cumulants`.
    """
    _check_kind(kind)
    return MomentSequence.of(_moments_from_cumulants(c.coefficients[1:], kind))


def convolve(a: MomentSequence, b: MomentSequence, kind: str) -> MomentSequence:
    """
    Classical (*) or free (⊞) convolution, adding cumulants.

    :raises MismatchError: if the truncation orders differ.
    """
    _check_kind(kind)
    if a.order != b.order:
        raise MismatchError(f"Truncation orders differ: {a.order} != {b.order}")
    ka = _cumulants_from_moments(a.moments, kind)
    kb = _cumulants_from_moments(b.moments, kind)
    return MomentSequence.of(_moments_from_cumulants([x + y for x, y in zip(ka, kb)], kind))


def dilate(m: MomentSequence, c: Number) -> MomentSequence:
    return MomentSequence.of([x * c**k for k, x in enumerate(m.moments, start=1)])


def point_mass(c: Number, K: int) -> MomentSequence:
    return MomentSequence.of([c**k for k in range(1, K + 1)])


def cauchy_series(m: MomentSequence) -> FormalSeries:
    """
    G(ξ) = Σ_k M_k ξ^{−k−1} as a series g(w) = Σ_k M_k w^{k+1} in w = 1/ξ.
    """
    return FormalSeries([0, 1] + list(m.moments), m.order + 1, "cauchy")


def r_transform(m: MomentSequence) -> FormalSeries:
    """
    R(y) = Σ_k κ_{k+1} y^k, obtained from G(R(y) + 1/y) = y by reverting g.

    The inverse h of g satisfies h(y) = y·u(y) with u(0) = 1, so R = (1/u − 1)/y.
    """
    if m.order < 1:
        raise ValueError("R-transform needs at least one moment")
    h = cauchy_series(m).reversion()
    u = h.shift(-1)
    r = (u.reciprocal() - 1).shift(-1)
    return FormalSeries(r.coefficients, r.order, "r")


def _stirling_row(k: int) -> List[int]:
    row = [1]
    for n in range(1, k + 1):
        nxt = [0] * (n + 1)
        for r in range(1, n + 1):
            nxt[r] = r * (row[r] if r < len(row) else 0) + row[r - 1]
        row = nxt
    return row


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def all_words(K: int) -> List[ColoredWord]:
    words = []
    for length in range(1, K + 1):
        for letters in product((Color.WHITE, Color.BLACK), repeat=length):
            words.append(ColoredWord(letters))
    return words


@lru_cache(maxsize=None)
def _block_lists(klass: PartitionClass, k: int) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    return tuple(p.blocks for p in enumerate_class(klass, k))


def colored_moments_from_cumulants(
    kappa: Callable[[ColoredWord], Number], K: int, kind: str
) -> Dict[ColoredWord, Number]:
    """
    *-moments M(w) = Σ_π Π_b κ(w|_b), π running over P(|w|) or NC(|w|).
    """
    _check_kind(kind)
    klass = PartitionClass.P if kind == CLASSICAL else PartitionClass.NC
    memo: Dict[ColoredWord, Number] = {}

    def cumulant(word: ColoredWord) -> Number:
        if word not in memo:
            memo[word] = kappa(word)
        return memo[word]

    result: Dict[ColoredWord, Number] = {}
    for word in all_words(K):
        total: Number = 0
        for blocks in _block_lists(klass, len(word)):
            term: Number = 1
            for block in blocks:
                term *= cumulant(ColoredWord(tuple(word[x - 1] for x in block)))
                if term == 0:
                    break
            total += term
        result[word] = _tidy(total)
    return result


def colored_cumulant(moment: Callable[[ColoredWord], Number], word: ColoredWord, kind: str) -> Number:
    """
    Multivariate cumulant of a word by Möbius inversion, κ(w) = Σ_π μ(π, 1̂) Π_b M(w|_b).
    """
    _check_kind(kind)
    klass = PartitionClass.P if kind == CLASSICAL else PartitionClass.NC
    top = one_block(len(word))
    total: Number = 0
    for p in enumerate_class(klass, len(word)):
        term: Number = mobius(p, top, klass)
        for block in p.blocks:
            term *= moment(ColoredWord(tuple(word[x - 1] for x in block)))
        total += term
    return _tidy(total)


def _check_law(t: Number, s: int, K: int) -> None:
    if t <= 0:
        raise ValueError("t must be positive")
    if s < 1:
        raise ValueError("s must be positive")
    if K < 1:
        raise ValueError("K must be positive")


def law_moments(law: str, K: int, t: Number = 1, s: int = 1) -> MomentSequence:
    """
    Moments of a law of the catalog.

    :param law: one of :data:`LAWS`.
    :param K: truncation order.
    :param t: the law's parameter, t > 0.
    :param s: order of the roots of unity for the Bessel laws.
    :return: the moments, with *-moments for the complex laws.
    :raises ValueError: on an unknown law or invalid parameters.
    """
    _check_law(t, s, K)
    if isinstance(t, int):
        t = Fraction(t)
    if law == "gaussian":
        return MomentSequence.of([t ** (k // 2) * _double_factorial(k - 1) if k % 2 == 0 else 0 for k in range(1, K + 1)])
    if law == "poisson":
        return MomentSequence.of([sum(c * t**r for r, c in enumerate(_stirling_row(k))) for k in range(1, K + 1)])
    if law == "semicircle":
        return MomentSequence.of([t ** (k // 2) * catalan(k // 2) if k % 2 == 0 else 0 for k in range(1, K + 1)])
    if law == "free-poisson":
        return MomentSequence.of([sum(narayana(k, r) * t**r for r in range(1, k + 1)) for k in range(1, K + 1)])
    if law in ("complex-gaussian", "circular"):
        klass = PartitionClass.MATCHED_P2 if law == "complex-gaussian" else PartitionClass.MATCHED_NC2
        colored = {}
        for word in all_words(K):
            count = len(enumerate_class(klass, len(word), word)) if len(word) % 2 == 0 else 0
            colored[word] = t ** (len(word) // 2) * count if count else 0
        return MomentSequence.of([0] * K, colored)
    if law in ("bessel", "free-bessel"):
        kind = CLASSICAL if law == "bessel" else FREE
        return compound_poisson(DiscreteMeasure.roots_of_unity(s, t), kind, K)
    raise ValueError(f"Unknown law {law!r}, expected one of {', '.join(LAWS)}")


def compound_poisson(rho: DiscreteMeasure, kind: str, K: int) -> MomentSequence:
    """
    Compound (free) Poisson law of a finite measure ρ: its cumulants are the moments of ρ.

    Real ρ gives real moments. Circle-supported ρ gives *-moments, the cumulant of a word
    being the mixed moment of ρ; the plain moments are then those of the all-white words.
    """
    _check_kind(kind)
    if rho.is_real:
        return MomentSequence.of(_moments_from_cumulants([rho.moment(k) for k in range(1, K + 1)], kind))
    colored = colored_moments_from_cumulants(rho.word_moment, K, kind)
    plain = [colored[ColoredWord.uniform(k)] for k in range(1, K + 1)]
    return MomentSequence.of(plain, colored)


def _over(value: Number, n: int) -> Number:
    return value / n if isinstance(value, (float, complex)) else Fraction(value, n)


def compound_poisson_limit(rho: DiscreteMeasure, kind: str, n: int, K: int) -> MomentSequence:
    """
    Moments of ((1 − c/n)δ_0 + ρ/n)^{⊛n}, c the mass of ρ, for real ρ.
    """
    _check_kind(kind)
    if not rho.is_real:
        raise ValueError("Finite-n approximation requires a real measure")
    if n < 1 or n < rho.mass:
        raise ValueError("n must be at least the mass of rho")
    step = [_over(rho.moment(k), n) for k in range(1, K + 1)]
    kappa = [n * x for x in _cumulants_from_moments(step, kind)]
    return MomentSequence.of(_moments_from_cumulants(kappa, kind))


def compound_poisson_by_sum(rho: DiscreteMeasure, K: int) -> MomentSequence:
    """
    Free compound Poisson law as the free sum over atoms (z, w) of free Poisson laws π_w
    dilated by z.
    """
    if not rho.is_real:
        raise ValueError("Free sum decomposition requires a real measure")
    total = point_mass(0, K)
    for position, weight in rho.atoms:
        total = convolve(total, dilate(law_moments("free-poisson", K, weight), position), FREE)
    return total


@dataclass(frozen=True)
class LimitRow:
    index: str
    value: Number
    limit: Number

    @property
    def gap(self) -> float:
        return abs(complex(self.value) - complex(self.limit))


def _rescaled(kappa: Number, n: int, k: int) -> Number:
    """
    n·κ_k·n^{−k/2}, the k-th cumulant of (X_1 + … + X_n)/√n.
    """
    if kappa == 0:
        return 0
    if k % 2 == 0:
        return kappa * Fraction(n) ** (1 - k // 2)
    return complex(kappa) * n ** (1 - k / 2) if isinstance(kappa, complex) else float(kappa) * n ** (1 - k / 2)


def limit_theorem_check(base: DiscreteMeasure, theorem: str, n: int, K: int) -> List[LimitRow]:
    """
    Compares the moments of the n-fold convolution of ``base`` (rescaled by 1/√n for the
    central limit theorems) with the moments of the limiting law.

    :param base: the law of one summand.
    :param theorem: one of :data:`THEOREMS`.
    :param n: number of summands.
    :param K: number of moments, or maximal word length for ``cclt``.
    :return: one row per moment index, or per colored word for ``cclt``.
    :raises ValueError: if a central limit theorem is given a non-centered base.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"Theorem must be one of {', '.join(THEOREMS)}, got {theorem!r}")
    if n < 1:
        raise ValueError("n must be positive")
    if theorem in ("clt", "free-clt", "cclt") and abs(complex(base.moment(1))) > ATOM_TOLERANCE:
        raise ValueError("Central limit theorems require a centered base measure")
    if theorem == "cclt":
        return _complex_clt_rows(base, n, K)
    if not base.is_real:
        raise ValueError(f"{theorem} requires a real base measure")
    kind = FREE if theorem.startswith("free") else CLASSICAL
    kappa = _cumulants_from_moments([base.moment(k) for k in range(1, K + 1)], kind)
    if theorem.endswith("clt"):
        kappa = [_rescaled(c, n, k) for k, c in enumerate(kappa, start=1)]
        law = "gaussian" if kind == CLASSICAL else "semicircle"
        target = law_moments(law, K, base.moment(2))
    else:
        kappa = [n * c for c in kappa]
        target = compound_poisson(base.scaled(n).without_zero(), kind, K)
    values = _moments_from_cumulants(kappa, kind)
    rows = [LimitRow(str(k), v, target[k]) for k, v in enumerate(values, start=1)]
    logger.debug("%s n=%d K=%d max gap %.3g", theorem, n, K, max(r.gap for r in rows))
    return rows


def _complex_clt_rows(base: DiscreteMeasure, n: int, K: int) -> List[LimitRow]:
    def kappa(word: ColoredWord) -> Number:
        return _rescaled(colored_cumulant(base.word_moment, word, CLASSICAL), n, len(word))

    values = colored_moments_from_cumulants(kappa, K, CLASSICAL)
    target = law_moments("complex-gaussian", K, base.mixed_moment(1, 1))
    return [LimitRow(str(w), values[w], target.word(w)) for w in all_words(K)]


def semicircle_density_check(k: int) -> Tuple[float, int]:
    """
    Integrates x^{2k} against the standard semicircle density by adaptive quadrature.

    :return: the numerical value and the Catalan number it should equal.
    """
    value, _ = integrate.quad(
        lambda x: x ** (2 * k) * math.sqrt(max(4 - x * x, 0.0)) / (2 * math.pi),
        -2,
        2,
        epsabs=1e-11,
        epsrel=1e-11,
        limit=200,
    )
    return value, catalan(k)


def free_poisson_density_check(k: int, t: float) -> Tuple[float, float]:
    """
    Integrates x^k against the Marchenko-Pastur density of parameter t ≥ 1.
    """
    if t < 1:
        raise ValueError("Density check requires t ≥ 1, smaller t carries an atom at 0")
    lo, hi = (1 - math.sqrt(t)) ** 2, (1 + math.sqrt(t)) ** 2

    def density(x: float) -> float:
        return math.sqrt(max(4 * t - (x - 1 - t) ** 2, 0.0)) / (2 * math.pi * x) if x > 0 else 0.0

    value, _ = integrate.quad(lambda x: x**k * density(x), lo, hi, epsabs=1e-11, epsrel=1e-11, limit=200)
    return value, math.fsum(narayana(k, r) * t**r for r in range(1, k + 1)) if k else 1.0
