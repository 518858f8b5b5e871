from fractions import Fraction

import pytest

from opalg.cyclotomic import CyclotomicNumber, cyclotomic_coefficients, root_sum


def test_should_read_cyclotomic_polynomial():
    assert cyclotomic_coefficients(4) == (1, 0, 1)
    assert cyclotomic_coefficients(6) == (1, -1, 1)


@pytest.mark.parametrize("order", [2, 3, 4, 6, 12])
def test_should_vanish_sum_of_all_roots(order):
    assert root_sum(order, range(order)).is_zero()


def test_should_multiply_roots():
    assert CyclotomicNumber.root(5, 2) * CyclotomicNumber.root(5, 3) == 1


def test_should_recognize_rational_values():
    # ζ_6 + ζ_6^{−1} = 1
    assert root_sum(6, [1, -1]).rational_value() == 1
    assert root_sum(8, [1]).rational_value() is None


def test_should_conjugate():
    z = CyclotomicNumber.root(8, 3)
    assert z * z.conjugate() == 1
    assert complex(z.conjugate()) == pytest.approx(complex(z).conjugate())


def test_should_refuse_mixed_orders():
    with pytest.raises(ValueError):
        CyclotomicNumber.root(3, 1) + CyclotomicNumber.root(4, 1)


def test_should_scale_by_rational():
    assert CyclotomicNumber.rational(5, 2) * Fraction(1, 2) == 1
