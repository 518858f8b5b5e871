from fractions import Fraction

import pytest

from opalg.partitions import catalan
from opalg.series import FormalSeries, series_from


def test_should_truncate_to_smaller_order():
    a = FormalSeries([1, 1, 1], 2)
    b = FormalSeries([1, 2], 1)
    assert (a + b).order == 1
    assert (a + b).coefficients == [2, 3]


def test_should_invert_geometric_series():
    x = FormalSeries.variable(5)
    assert (1 / (1 - x)).coefficients == [1] * 6


def test_should_refuse_inverting_zero_constant():
    with pytest.raises(ZeroDivisionError):
        FormalSeries.variable(3).reciprocal()


def test_should_compose_series():
    x = FormalSeries.variable(4)
    geometric = 1 / (1 - x)
    assert geometric.compose(x * 2).coefficients == [1, 2, 4, 8, 16]


def test_should_refuse_composing_with_constant_term():
    with pytest.raises(ValueError):
        FormalSeries.variable(3).compose(FormalSeries([1, 1], 3))


def test_should_revert_catalan_relation():
    # x − x² reverts to Σ Catalan(k−1) x^k
    x = FormalSeries.variable(8)
    inverse = (x - x * x).reversion()
    assert inverse.coefficients == [0] + [catalan(k - 1) for k in range(1, 9)]


def test_should_shift_both_ways():
    s = series_from([0, 0, 1, 2])
    assert s.shift(-2).coefficients == [1, 2]
    assert s.shift(1).coefficients == [0, 0, 0, 1]
    with pytest.raises(ValueError):
        s.shift(-3)


def test_should_keep_exact_rationals():
    s = FormalSeries([Fraction(1, 3)], 0) * 3
    assert s[0] == 1
