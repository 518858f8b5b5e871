from fractions import Fraction
from typing import Iterable, List, Sequence, Union

Scalar = Union[int, Fraction]


class FormalSeries:
    """
    A power series truncated after the coefficient of ``x**order``.

    Arithmetic never reads past the truncation order; combining two series truncates to
    the smaller order.

    :param coefficients: c_0, c_1, ... as integers or fractions.
    :param order: truncation order, defaults to ``len(coefficients) - 1``.
    :param tag: role of the variable, e.g. ``"cauchy"``, ``"r"``, ``"z"``, ``"q"``.
    """

    def __init__(self, coefficients: Iterable[Scalar], order: int = None, tag: str = ""):
        coefficients = [Fraction(c) for c in coefficients]
        if order is None:
            order = len(coefficients) - 1
        if order < 0:
            raise ValueError("Order must not be negative")
        coefficients = coefficients[: order + 1]
        coefficients += [Fraction(0)] * (order + 1 - len(coefficients))
        self._coefficients = tuple(coefficients)
        self.order = order
        self.tag = tag

    @classmethod
    def constant(cls, value: Scalar, order: int, tag: str = "") -> "FormalSeries":
        return cls([value], order, tag)

    @classmethod
    def variable(cls, order: int, tag: str = "") -> "FormalSeries":
        return cls([0, 1], order, tag)

    @property
    def coefficients(self) -> List[Fraction]:
        return list(self._coefficients)

    def __getitem__(self, n: int) -> Fraction:
        return self._coefficients[n]

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self._coefficients[: order + 1] == other._coefficients[: order + 1]

    def __hash__(self):
        return hash(self._coefficients)

    def __repr__(self) -> str:
        return f"FormalSeries({[str(c) for c in self._coefficients]}, tag={self.tag!r})"

    def truncate(self, order: int) -> "FormalSeries":
        return FormalSeries(self._coefficients, min(order, self.order), self.tag)

    def _coerce(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            return other
        return FormalSeries.constant(other, self.order, self.tag)

    def __add__(self, other) -> "FormalSeries":
        other = self._coerce(other)
        order = min(self.order, other.order)
        return FormalSeries([self[n] + other[n] for n in range(order + 1)], order, self.tag)

    __radd__ = __add__

    def __neg__(self) -> "FormalSeries":
        return FormalSeries([-c for c in self._coefficients], self.order, self.tag)

    def __sub__(self, other) -> "FormalSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FormalSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            value = Fraction(other)
            return FormalSeries([c * value for c in self._coefficients], self.order, self.tag)
        order = min(self.order, other.order)
        product = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self._coefficients[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                product[i + j] += a * other[j]
        return FormalSeries(product, order, self.tag)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "FormalSeries":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = FormalSeries.constant(1, self.order, self.tag)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def reciprocal(self) -> "FormalSeries":
        """
        Multiplicative inverse, requires a nonzero constant term.
        """
        if self[0] == 0:
            raise ZeroDivisionError("Series with zero constant term is not invertible")
        inverse = [Fraction(0)] * (self.order + 1)
        inverse[0] = 1 / self[0]
        for n in range(1, self.order + 1):
            acc = sum((self[i] * inverse[n - i] for i in range(1, n + 1)), Fraction(0))
            inverse[n] = -acc / self[0]
        return FormalSeries(inverse, self.order, self.tag)

    def __truediv__(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other) -> "FormalSeries":
        return self._coerce(other) * self.reciprocal()

    def shift(self, n: int) -> "FormalSeries":
        """
        Multiplies by ``x**n`` (n may be negative when the low coefficients vanish).
        """
        if n >= 0:
            return FormalSeries([0] * n + list(self._coefficients), self.order, self.tag)
        if any(self._coefficients[: -n]):
            raise ValueError("Cannot divide by x: low coefficients are nonzero")
        return FormalSeries(self._coefficients[-n:], self.order + n, self.tag)

    def derivative(self) -> "FormalSeries":
        return FormalSeries(
            [n * self[n] for n in range(1, self.order + 1)], max(self.order - 1, 0), self.tag
        )

    def compose(self, inner: "FormalSeries") -> "FormalSeries":
        """
        Returns ``self(inner(x))``; ``inner`` must have zero constant term.
        """
        if inner[0] != 0:
            raise ValueError("Inner series must have zero constant term")
        order = min(self.order, inner.order)
        inner = inner.truncate(order)
        result = FormalSeries.constant(0, order, self.tag)
        for c in reversed(self._coefficients[: order + 1]):
            result = result * inner + c
        return result

    def reversion(self) -> "FormalSeries":
        """
        Compositional inverse h with ``self(h(x)) = x``.

        Newton iteration h <- h - (self(h) - x) / self'(h), doubling the number of correct
        coefficients at each step. Requires c_0 = 0 and c_1 != 0.
        """
        if self[0] != 0 or self.order < 1 or self[1] == 0:
            raise ValueError("Reversion requires c_0 = 0 and c_1 != 0")
        x = FormalSeries.variable(self.order, self.tag)
        h = x * (1 / self[1])
        derivative = self.derivative()
        precision = 2
        while True:
            h = h - (self.compose(h) - x) / _padded(derivative, self.order).compose(h)
            if precision > self.order:
                break
            precision *= 2
        return h


def _padded(series: FormalSeries, order: int) -> FormalSeries:
    return FormalSeries(series.coefficients, order, series.tag)


def series_from(values: Sequence[Scalar], tag: str = "") -> FormalSeries:
    return FormalSeries(values, len(values) - 1, tag)
