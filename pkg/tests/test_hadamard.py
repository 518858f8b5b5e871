from fractions import Fraction

import numpy as np
import pytest

from opalg import hadamard
from opalg.config import SizeGuards
from opalg.exceptions import HadamardValidationError, MismatchError, SizeGuardError
from opalg.hadamard import HadamardMatrix


@pytest.fixture
def f2():
    return hadamard.fourier([2])


@pytest.fixture
def f3():
    return hadamard.fourier([3])


def test_should_build_exact_fourier_tensor_products():
    h = hadamard.fourier([2, 2])
    assert h.n == 4
    assert h.is_exact
    assert h.order == 2
    assert np.allclose(h.matrix, np.kron(hadamard.fourier([2]).matrix, hadamard.fourier([2]).matrix))


def test_should_reject_entries_off_the_unit_circle():
    with pytest.raises(HadamardValidationError, match="modulus"):
        HadamardMatrix.from_entries(np.array([[1, 1], [1, -2]]))


def test_should_reject_non_orthogonal_exponent_tables():
    with pytest.raises(HadamardValidationError, match="orthogonal"):
        HadamardMatrix.from_exponents(2, [[0, 0], [0, 0]])


def test_should_read_back_json_and_csv(f3):
    assert HadamardMatrix.from_json(f3.to_json()).exponents == f3.exponents
    again = HadamardMatrix.from_csv(f3.to_csv())
    assert not again.is_exact
    assert np.allclose(again.matrix, f3.matrix)


def test_should_deform_tensor_product(f2, f3):
    q = np.exp(2j * np.pi * np.array([[0.1, 0.2, 0.3], [0.4, 0.5, 0.6]]))
    h = hadamard.dita_deform(f2, f3, q)
    assert h.n == 6
    assert not h.is_exact
    assert hadamard.dita_deform(f2, f3, np.ones((2, 3))).is_exact
    with pytest.raises(MismatchError):
        hadamard.dita_deform(f2, f3, np.ones((3, 2)))


@pytest.mark.parametrize("orders", [[2], [3], [2, 2], [4]])
def test_should_build_magic_unitary_and_commuting_square(orders):
    h = hadamard.fourier(orders)
    assert hadamard.magic_unitary(h).defect() <= hadamard.PROJECTION_TOLERANCE
    assert hadamard.commuting_square_check(h).passed


def test_should_fail_commuting_square_for_identity():
    assert not hadamard.commuting_square_defects(np.eye(3)).passed


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_should_count_fourier_planar_dimensions(n, k):
    assert hadamard.planar_dim(hadamard.fourier([n]), k) == n ** (k - 1)


def test_should_agree_between_exact_and_float_elimination(f3):
    assert hadamard.intertwiner_dim(f3, 0, 2, exact=True) == 3
    assert hadamard.intertwiner_dim(f3, 0, 2, exact=False) == 3
    assert hadamard.intertwiner_dim(f3, 1, 1) == 3


def test_should_refuse_large_intertwiner_systems(f3):
    with pytest.raises(SizeGuardError):
        hadamard.planar_dim(f3, 3, SizeGuards(linear_system=100))


def test_should_converge_cesaro_average_to_fixed_point_projection(f2):
    first = hadamard.cesaro_haar(f2, 1, 10)
    assert first.rank == 1
    assert np.allclose(first.matrix, np.full((2, 2), 0.5))
    second = hadamard.cesaro_haar(f2, 2, 10)
    assert second.rank == hadamard.planar_dim(f2, 2)
    assert second.defect < 1e-9


def test_should_refuse_large_cesaro_averages(f3):
    with pytest.raises(SizeGuardError):
        hadamard.cesaro_haar(f3, 3, 5, SizeGuards(cesaro=100))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (4, 2)])
def test_should_count_second_kesten_moment(m, n):
    assert hadamard.kesten_moment(m, n, 1) == 1
    assert hadamard.kesten_moment(m, n, 2) == m + n - 1


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_should_match_blowup_moments(n, p):
    assert hadamard.kesten_moment(2, n, p) == hadamard.blowup_measure_m2(n).moment(p)


def test_should_compute_third_moment_for_two_by_two():
    assert hadamard.kesten_moment(2, 2, 3) == 10


def test_should_describe_blowup_law():
    law = hadamard.blowup_measure_m2(3)
    assert law.zero_mass == Fraction(2, 3)
    assert law.moment(2) == 4
    assert "delta_0" in law.describe()


def test_should_refuse_large_enumerations():
    with pytest.raises(SizeGuardError):
        hadamard.kesten_moment(3, 3, 4, SizeGuards(enumeration=1000))


def test_should_estimate_gram_law_moments():
    estimate = hadamard.gram_law_mc(2, 3, 2, samples=2000)
    assert estimate.within(complex(hadamard.kesten_moment(2, 3, 2)), errors=4)
    assert hadamard.gram_law_mc(2, 3, 1, samples=10).mean == pytest.approx(1)


def test_should_sample_blowup_map():
    estimate = hadamard.blowup_samples(3, 2, samples=2000)
    assert estimate.within(4, errors=4)


def test_should_shrink_asymptotic_gaps():
    assert hadamard.asymptotic_moments(1, 1, 3) == 5
    rows = hadamard.convergence_check(1, 1, 2, [1, 2, 3])
    assert [row.value for row in rows] == [1, Fraction(3, 2), Fraction(5, 3)]
    assert [row.gap for row in rows] == [1, Fraction(1, 2), Fraction(1, 3)]


def test_should_skip_non_integral_sizes():
    rows = hadamard.convergence_check(Fraction(1, 2), 1, 2, [1, 2])
    assert [(row.k, row.m, row.n) for row in rows] == [(2, 1, 2)]


def test_should_reject_nonpositive_asymptotic_parameters():
    with pytest.raises(ValueError):
        hadamard.asymptotic_moments(0, 1, 2)


def test_should_find_positive_hankel_matrix():
    report = hadamard.hankel_check(2, 2, 4)
    assert report.moments[:3] == (1, 1, 3)
    assert report.positive


@pytest.mark.parametrize("m,n,k", [(2, 2, 1), (2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 3, 3), (3, 3, 2)])
def test_should_multiply_planar_dimensions_over_tensor_products(m, n, k):
    product = hadamard.fourier([m, n])
    assert hadamard.planar_dim(product, k) == hadamard.planar_dim(hadamard.fourier([m]), k) * hadamard.planar_dim(
        hadamard.fourier([n]), k
    )


@pytest.mark.parametrize("orders", [[3], [2, 2]])
def test_should_match_cesaro_rank_with_planar_dimension(orders):
    h = hadamard.fourier(orders)
    result = hadamard.cesaro_haar(h, 2, 10)
    assert result.rank == hadamard.planar_dim(h, 2)
    assert result.defect < 1e-9
