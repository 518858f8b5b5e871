from fractions import Fraction

import pytest

from opalg import linalg


def test_should_compute_exact_determinant():
    assert linalg.determinant([[1, 2], [3, 4]]) == -2
    assert linalg.determinant([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)


def test_should_compute_rank():
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.rank([[1, 0], [0, 1]]) == 2


def test_should_invert_matrix():
    a = [[2, 1], [1, 1]]
    assert linalg.matmul(a, linalg.inverse(a)) == linalg.identity(2)


def test_should_refuse_singular_inverse():
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


def test_should_solve_system():
    assert linalg.solve([[1, 1], [1, -1]], [3, 1]) == [2, 1]


def test_should_reject_ragged_rows():
    with pytest.raises(ValueError):
        linalg.to_fraction_matrix([[1, 2], [3]])
