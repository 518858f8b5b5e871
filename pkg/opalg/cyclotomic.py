import cmath
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

from sympy import Poly, cyclotomic_poly, symbols

_x = symbols("x")

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_coefficients(order: int) -> Tuple[int, ...]:
    """
    Integer coefficients of the cyclotomic polynomial Φ_order, lowest degree first.
    """
    if order < 1:
        raise ValueError("Order must be positive")
    coefficients = Poly(cyclotomic_poly(order, _x), _x).all_coeffs()
    return tuple(int(c) for c in reversed(coefficients))


class CyclotomicNumber:
    """
    An exact element of ℚ(ζ) with ζ = exp(2πi/order), stored as a polynomial in ζ reduced
    modulo Φ_order, so equality is coefficientwise.
    """

    def __init__(self, order: int, coefficients: Iterable[Rational]):
        self.order = order
        self._coefficients = _reduce(order, coefficients)

    @classmethod
    def root(cls, order: int, exponent: int) -> "CyclotomicNumber":
        exponent %= order
        return cls(order, [0] * exponent + [1])

    @classmethod
    def rational(cls, order: int, value: Rational) -> "CyclotomicNumber":
        return cls(order, [value])

    @classmethod
    def from_exponents(cls, order: int, weighted: Iterable[Tuple[int, Rational]]) -> "CyclotomicNumber":
        """
        Builds Σ w ζ^e from (e, w) pairs.
        """
        powers = [Fraction(0)] * order
        for exponent, weight in weighted:
            powers[exponent % order] += Fraction(weight)
        return cls(order, powers)

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coefficients

    def _check(self, other: "CyclotomicNumber") -> None:
        if other.order != self.order:
            raise ValueError("Cyclotomic numbers must share the same order")

    def __add__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        self._check(other)
        length = max(len(self._coefficients), len(other._coefficients))
        a = self._coefficients + (Fraction(0),) * (length - len(self._coefficients))
        b = other._coefficients + (Fraction(0),) * (length - len(other._coefficients))
        return CyclotomicNumber(self.order, [x + y for x, y in zip(a, b)])

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, [-c for c in self._coefficients])

    def __sub__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        return self + (-other)

    def __mul__(self, other) -> "CyclotomicNumber":
        if not isinstance(other, CyclotomicNumber):
            return CyclotomicNumber(self.order, [c * Fraction(other) for c in self._coefficients])
        self._check(other)
        product = [Fraction(0)] * (len(self._coefficients) + len(other._coefficients))
        for i, a in enumerate(self._coefficients):
            if a:
                for j, b in enumerate(other._coefficients):
                    product[i + j] += a * b
        return CyclotomicNumber(self.order, product)

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicNumber":
        return CyclotomicNumber.from_exponents(
            self.order, ((-e, c) for e, c in enumerate(self._coefficients))
        )

    def is_zero(self) -> bool:
        return not any(self._coefficients)

    def rational_value(self) -> Optional[Fraction]:
        """
        The value as a fraction when the number is rational, otherwise None.
        """
        if any(self._coefficients[1:]):
            return None
        return self._coefficients[0] if self._coefficients else Fraction(0)

    def __complex__(self) -> complex:
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * e / self.order) for e, c in enumerate(self._coefficients)),
            0j,
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicNumber):
            return self.order == other.order and self._coefficients == other._coefficients
        if isinstance(other, (int, Fraction)):
            return self.rational_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self._coefficients))

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self._coefficients]})"


def _reduce(order: int, coefficients: Iterable[Rational]) -> Tuple[Fraction, ...]:
    folded = [Fraction(0)] * order
    for exponent, c in enumerate(coefficients):
        folded[exponent % order] += Fraction(c)
    modulus = cyclotomic_coefficients(order)
    degree = len(modulus) - 1
    for top in range(len(folded) - 1, degree - 1, -1):
        c = folded[top]
        if c:
            shift = top - degree
            for i, m in enumerate(modulus):
                folded[shift + i] -= c * m
    reduced = folded[:degree]
    while reduced and reduced[-1] == 0:
        reduced.pop()
    return tuple(reduced)


def root_sum(order: int, exponents: Sequence[int]) -> CyclotomicNumber:
    """
    Exact Σ_j ζ^{e_j}.
    """
    return CyclotomicNumber.from_exponents(order, ((e, 1) for e in exponents))
