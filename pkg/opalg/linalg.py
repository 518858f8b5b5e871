from fractions import Fraction
from typing import List, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Matrix = List[List[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence[Rational]]) -> Matrix:
    """
    Copies a square or rectangular matrix into a list of Fraction rows.

    :param rows: must not be None.
    :return: a fresh matrix.
    :raises ValueError: if rows have unequal lengths.
    """
    if rows is None:
        raise ValueError("Matrix must not be None")
    matrix = [[Fraction(x) for x in row] for row in rows]
    if matrix and any(len(row) != len(matrix[0]) for row in matrix):
        raise ValueError("Matrix rows must have equal lengths")
    return matrix


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError("Matrix dimensions do not match")
    columns = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in columns] for row in a]


def determinant(rows: Sequence[Sequence[Rational]]) -> Fraction:
    """
    Exact determinant by Bareiss fraction-free elimination.

    For integer input every intermediate value stays integral, the division of each step
    being exact.

    :param rows: a square matrix of integers or fractions.
    :return: the determinant.
    """
    matrix = to_fraction_matrix(rows)
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("Determinant requires a square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for i in range(n - 1):
        if matrix[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if matrix[r][i] != 0), None)
            if swap is None:
                return Fraction(0)
            matrix[i], matrix[swap] = matrix[swap], matrix[i]
            sign = -sign
        pivot = matrix[i][i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                matrix[r][c] = (matrix[r][c] * pivot - matrix[r][i] * matrix[i][c]) / previous
            matrix[r][i] = Fraction(0)
        previous = pivot
    return sign * matrix[n - 1][n - 1]


def row_echelon(rows: Sequence[Sequence[Rational]]) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form over the rationals.

    :return: the reduced matrix and the list of pivot columns.
    """
    matrix = to_fraction_matrix(rows)
    pivots = []
    if not matrix:
        return matrix, pivots
    n_rows, n_cols = len(matrix), len(matrix[0])
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if matrix[i][c] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inverse_pivot = 1 / matrix[r][c]
        matrix[r] = [x * inverse_pivot for x in matrix[r]]
        for i in range(n_rows):
            factor = matrix[i][c]
            if i != r and factor != 0:
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
    return matrix, pivots


def rank(rows: Sequence[Sequence[Rational]]) -> int:
    return len(row_echelon(rows)[1])


def inverse(rows: Sequence[Sequence[Rational]]) -> Matrix:
    """
    Exact inverse by Gauss-Jordan elimination on the augmented matrix.

    :param rows: a square matrix.
    :return: the inverse.
    :raises ZeroDivisionError: if the matrix is singular.
    """
    matrix = to_fraction_matrix(rows)
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("Inverse requires a square matrix")
    augmented = [row + unit for row, unit in zip(matrix, identity(n))]
    reduced, pivots = row_echelon(augmented)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is not invertible")
    return [row[n:] for row in reduced]


def solve(rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> List[Fraction]:
    """
    Solves a square nonsingular system exactly.
    """
    matrix = to_fraction_matrix(rows)
    if len(matrix) != len(rhs):
        raise ValueError("Right-hand side length must match the matrix")
    augmented = [row + [Fraction(b)] for row, b in zip(matrix, rhs)]
    reduced, pivots = row_echelon(augmented)
    n = len(matrix)
    if pivots != list(range(n)):
        raise ZeroDivisionError("system is singular")
    return [row[n] for row in reduced]
