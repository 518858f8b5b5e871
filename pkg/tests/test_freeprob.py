from fractions import Fraction

import pytest

from opalg import freeprob
from opalg.exceptions import MismatchError
from opalg.partitions import ColoredWord, bell, catalan
from opalg.freeprob import CLASSICAL, FREE, DiscreteMeasure


@pytest.mark.parametrize(
    "law,expected",
    [
        ("gaussian", [0, 1, 0, 3, 0, 15]),
        ("semicircle", [0, 1, 0, 2, 0, 5]),
        ("poisson", [bell(k) for k in range(1, 7)]),
        ("free-poisson", [catalan(k) for k in range(1, 7)]),
    ],
)
def test_should_give_law_moments(law, expected):
    assert list(freeprob.law_moments(law, 6).moments) == expected


def test_should_scale_free_poisson_by_narayana():
    # t + 3t² + t³ at t = 1/2
    assert freeprob.law_moments("free-poisson", 3, Fraction(1, 2))[3] == Fraction(1, 2) + Fraction(3, 4) + Fraction(1, 8)


@pytest.mark.parametrize(
    "law,word,expected",
    [
        ("complex-gaussian", "o*", 1),
        ("complex-gaussian", "oo", 0),
        ("complex-gaussian", "oo**", 2),
        ("circular", "oo**", 1),
        ("circular", "o*o*", 2),
    ],
)
def test_should_give_star_moments(law, word, expected):
    assert freeprob.law_moments(law, 4).word(ColoredWord.parse(word)) == expected


def test_should_reject_unknown_law():
    with pytest.raises(ValueError, match="Unknown law"):
        freeprob.law_moments("cauchy", 4)


def test_should_reject_nonpositive_parameter():
    with pytest.raises(ValueError):
        freeprob.law_moments("poisson", 4, 0)


def test_should_have_single_cumulant_for_gaussian_laws():
    assert freeprob.cumulants(freeprob.law_moments("gaussian", 6), CLASSICAL).coefficients == [0, 0, 1, 0, 0, 0, 0]
    assert freeprob.cumulants(freeprob.law_moments("semicircle", 6), FREE).coefficients == [0, 0, 1, 0, 0, 0, 0]


def test_should_have_constant_cumulants_for_poisson_laws():
    t = Fraction(2, 3)
    assert freeprob.cumulants(freeprob.law_moments("poisson", 5, t), CLASSICAL).coefficients[1:] == [t] * 5
    assert freeprob.cumulants(freeprob.law_moments("free-poisson", 5, t), FREE).coefficients[1:] == [t] * 5


def test_should_give_constant_r_transform_of_free_poisson():
    r = freeprob.r_transform(freeprob.law_moments("free-poisson", 9, 2))
    assert r.coefficients[:8] == [2] * 8


def test_should_add_semicircle_variances():
    a = freeprob.law_moments("semicircle", 6, 1)
    b = freeprob.law_moments("semicircle", 6, 2)
    assert freeprob.convolve(a, b, FREE) == freeprob.law_moments("semicircle", 6, 3)


def test_should_add_gaussian_variances():
    a = freeprob.law_moments("gaussian", 6, 1)
    assert freeprob.convolve(a, a, CLASSICAL) == freeprob.law_moments("gaussian", 6, 2)


def test_should_refuse_mixed_orders():
    with pytest.raises(MismatchError):
        freeprob.convolve(freeprob.law_moments("gaussian", 4), freeprob.law_moments("gaussian", 5), CLASSICAL)


def test_should_reduce_bessel_laws_to_poisson_laws():
    assert freeprob.law_moments("bessel", 5, s=1) == freeprob.law_moments("poisson", 5)
    assert freeprob.law_moments("free-bessel", 5, s=1) == freeprob.law_moments("free-poisson", 5)


def test_should_decompose_free_compound_poisson():
    rho = DiscreteMeasure(((1, Fraction(1, 2)), (2, Fraction(1, 2))))
    assert freeprob.compound_poisson_by_sum(rho, 5) == freeprob.compound_poisson(rho, FREE, 5)


@pytest.mark.parametrize("theorem", ["clt", "free-clt"])
def test_should_approach_central_limit(theorem):
    rows = freeprob.limit_theorem_check(DiscreteMeasure.symmetric_bernoulli(), theorem, 1000, 4)
    assert max(row.gap for row in rows) < 0.01


@pytest.mark.parametrize("theorem", ["plt", "free-plt"])
def test_should_approach_poisson_limit(theorem):
    rows = freeprob.limit_theorem_check(DiscreteMeasure.bernoulli(Fraction(1, 1000)), theorem, 1000, 4)
    assert max(row.gap / max(1, abs(row.limit)) for row in rows) < 0.02


def test_should_refuse_uncentered_base_for_clt():
    with pytest.raises(ValueError, match="centered"):
        freeprob.limit_theorem_check(DiscreteMeasure.bernoulli(Fraction(1, 2)), "clt", 10, 4)


def test_should_reject_unbalanced_weights():
    with pytest.raises(ValueError, match="Weights sum"):
        DiscreteMeasure(((0, Fraction(1, 2)),))


@pytest.mark.parametrize("k", range(0, 7))
def test_should_integrate_semicircle_density(k):
    value, expected = freeprob.semicircle_density_check(k)
    assert value == pytest.approx(expected, abs=1e-7)


def test_should_integrate_free_poisson_density():
    value, expected = freeprob.free_poisson_density_check(3, 2.0)
    assert value == pytest.approx(expected, rel=1e-6)


def test_should_dilate_and_place_point_masses():
    assert freeprob.dilate(freeprob.law_moments("semicircle", 4), 2).moments == (0, 4, 0, 32)
    assert freeprob.point_mass(3, 3).moments == (3, 9, 27)


@pytest.mark.parametrize("kind", [CLASSICAL, FREE])
def test_should_approximate_poisson_at_finite_n(kind):
    m = freeprob.compound_poisson_limit(DiscreteMeasure.point_mass(1), kind, 10, 2)
    assert m.moments == (1, Fraction(19, 10))


def test_should_refuse_finite_n_below_mass():
    with pytest.raises(ValueError):
        freeprob.compound_poisson_limit(DiscreteMeasure.point_mass(1, 3), FREE, 2, 2)


def is_conjugate_pair(word):
    return len(word) == 2 and word[0] is not word[1]


@pytest.mark.parametrize("kind,law", [(FREE, "circular"), (CLASSICAL, "complex-gaussian")])
def test_should_build_star_moments_from_pair_cumulants(kind, law):
    expected = freeprob.law_moments(law, 4)
    built = freeprob.colored_moments_from_cumulants(lambda w: 1 if is_conjugate_pair(w) else 0, 4, kind)
    assert all(built[w] == expected.word(w) for w in freeprob.all_words(4))


@pytest.mark.parametrize("text,value", [("o*", 1), ("oo", 0), ("o*o*", 0), ("oo**", 0)])
def test_should_invert_circular_moments_to_free_cumulants(text, value):
    moments = freeprob.law_moments("circular", 4)
    assert freeprob.colored_cumulant(moments.word, ColoredWord.parse(text), FREE) == value
