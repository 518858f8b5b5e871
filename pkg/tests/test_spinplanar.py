import math

import numpy as np
import pytest

from opalg import tl
from opalg.exceptions import MismatchError, NonPlanarTangleError
from opalg.graphinv import InclusionData
from opalg.spinplanar import (
    GraphPlanarAlgebra,
    SpinTensor,
    Tangle,
    act_graph,
    act_spin,
    conditional_expectation,
    glue,
    graph_conditional_expectation,
    graph_jones_projection,
    graph_multiply,
    inclusion_weights,
    jones_projection,
    multiply,
    named_tangle,
    perron_weights,
    star_to_spin,
)
from tests.fixtures.graphs import path3, star


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_tensor(rng, n, k):
    matrix = rng.normal(size=(n**k, n**k)) + 1j * rng.normal(size=(n**k, n**k))
    return SpinTensor.from_matrix(n, matrix)


@pytest.mark.parametrize("name", ["identity", "multiplication", "inclusion", "expectation", "trace", "rotation", "shift"])
def test_should_build_planar_catalog_tangles(name):
    assert named_tangle(name, 2).name == name


def test_should_reject_crossing_tangle():
    strings = (((1, 1), (0, 2)), ((1, 2), (0, 1)))
    with pytest.raises(NonPlanarTangleError):
        Tangle(2, (2,), strings, placements=((0, 1),))


def test_should_reject_unpaired_point():
    with pytest.raises(ValueError, match="pair every marked point"):
        Tangle(2, (2,), (((1, 1), (0, 1)),))


def test_should_reject_unknown_tangle():
    with pytest.raises(ValueError, match="Unknown tangle"):
        named_tangle("braid", 2)


def test_should_multiply_as_matrices(rng):
    a, b = random_tensor(rng, 2, 2), random_tensor(rng, 2, 2)
    assert np.allclose(multiply(a, b).as_matrix(), a.as_matrix() @ b.as_matrix())


def test_should_take_matrix_trace(rng):
    x = random_tensor(rng, 3, 1)
    assert complex(act_spin(named_tangle("trace", 1), [x]).data) == pytest.approx(np.trace(x.as_matrix()))


def test_should_return_to_start_after_full_rotation(rng):
    x = random_tensor(rng, 2, 2)
    rotated = x
    for _ in range(2):
        rotated = act_spin(named_tangle("rotation", 2), [rotated])
    assert rotated.allclose(x)


def test_should_expect_unit_onto_unit():
    one = SpinTensor.from_matrix(3, np.eye(9))
    assert conditional_expectation(one).allclose(SpinTensor.from_matrix(3, np.eye(3)))


@pytest.mark.parametrize("n,k,i", [(2, 2, 1), (3, 3, 1), (2, 3, 2)])
def test_should_build_jones_projection(n, k, i):
    e = jones_projection(n, k, i).as_matrix()
    assert np.allclose(e @ e, e)
    assert np.allclose(e, e.conj().T)
    assert np.trace(e).real == pytest.approx(n ** (k - 2))


def test_should_match_temperley_lieb_projection():
    x = SpinTensor.from_element(tl.jones_projection(1, 2, 3), 3)
    assert x.allclose(jones_projection(3, 2, 1))


def test_should_count_circles_when_gluing():
    closed = glue(named_tangle("trace", 2), named_tangle("jones", 2), 1)
    assert closed.circles == 1
    assert complex(act_spin(closed, [], 3).data) == pytest.approx(3)


def test_should_refuse_input_of_wrong_size(rng):
    with pytest.raises(MismatchError):
        act_spin(named_tangle("identity", 2), [random_tensor(rng, 2, 1)])


def test_should_read_back_json(rng):
    x = random_tensor(rng, 2, 1)
    assert SpinTensor.from_json(x.to_json()).allclose(x)


def test_should_count_star_loops():
    algebra = GraphPlanarAlgebra.perron(star(3))
    assert algebra.gamma == pytest.approx(math.sqrt(3))
    assert algebra.dimension(1) == 3
    assert algebra.dimension(2) == 9


def test_should_match_spin_model_on_star_graph():
    algebra = GraphPlanarAlgebra.perron(star(3))
    e = graph_jones_projection(algebra, 2, 1)
    assert star_to_spin(e).allclose(jones_projection(3, 2, 1))
    assert graph_multiply(e, e).allclose(e)


def test_should_write_doubled_indices():
    x = SpinTensor.doubled(2, [0, 1])
    assert x.allclose(SpinTensor.basis(2, [0, 0, 1, 1]))
    assert x.data.sum() == 1


def test_should_find_perron_weights_of_star():
    eta, gamma = perron_weights(star(4))
    assert gamma == pytest.approx(2)
    assert eta[("a", 0)] / eta[("b", 3)] == pytest.approx(2)


def test_should_weight_markov_inclusion():
    eta, gamma = inclusion_weights(InclusionData.of([1], [[1, 1, 1]]))
    assert gamma == pytest.approx(math.sqrt(3))
    assert eta[("a", 0)] == pytest.approx(1)
    assert eta[("b", 2)] == pytest.approx(1 / math.sqrt(3))


def test_should_refuse_weights_of_non_markov_inclusion():
    with pytest.raises(ValueError, match="Markov"):
        inclusion_weights(InclusionData.of([1, 1], [[1, 0], [1, 1]]))


def test_should_agree_between_inclusion_and_perron_weights():
    algebra = GraphPlanarAlgebra.from_inclusion(InclusionData.of([1], [[1, 1, 1]]))
    assert algebra.gamma == pytest.approx(GraphPlanarAlgebra.perron(star(3)).gamma)
    assert algebra.dimension(2) == 9


def test_should_include_and_shift_units():
    algebra = GraphPlanarAlgebra.perron(star(3))
    one = algebra.unit(1)
    assert act_graph(named_tangle("inclusion", 1), [one]).allclose(algebra.unit(2))
    assert act_graph(named_tangle("shift", 1), [one]).allclose(algebra.unit(3))


def test_should_expect_graph_unit_onto_unit():
    algebra = GraphPlanarAlgebra.perron(star(3))
    assert graph_conditional_expectation(algebra.unit(1)).allclose(algebra.unit(0))


def test_should_refuse_spin_only_tangle_on_graph():
    algebra = GraphPlanarAlgebra.perron(star(3))
    with pytest.raises(ValueError):
        act_graph(named_tangle("rotation", 1), [algebra.unit(1)])


def test_should_glue_as_composition(rng):
    a, b, c = (random_tensor(rng, 2, 2) for _ in range(3))
    product = named_tangle("multiplication", 2)
    glued = glue(product, product, 1)
    assert act_spin(glued, [a, b, c]).allclose(multiply(multiply(a, b), c))

    traced = glue(named_tangle("trace", 2), product, 1)
    assert complex(act_spin(traced, [a, b]).data) == pytest.approx(np.trace(a.as_matrix() @ b.as_matrix()))

    x = random_tensor(rng, 3, 1)
    capped = glue(named_tangle("expectation", 1), named_tangle("inclusion", 1), 1)
    assert act_spin(capped, [x]).allclose(x * 3)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (2, 2)])
def test_should_scale_trace_by_n_under_inclusion(rng, n, k):
    x = random_tensor(rng, n, k)
    included = act_spin(named_tangle("inclusion", k), [x])
    traced = complex(act_spin(named_tangle("trace", k + 1), [included]).data)
    assert traced == pytest.approx(n * complex(act_spin(named_tangle("trace", k), [x]).data))


def test_should_satisfy_temperley_lieb_relations_on_graph():
    algebra = GraphPlanarAlgebra.perron(path3())
    assert algebra.gamma == pytest.approx(math.sqrt(2))
    e1, e2, e3 = (graph_jones_projection(algebra, 4, i) for i in (1, 2, 3))
    shrink = 1 / algebra.gamma**2
    for e in (e1, e2, e3):
        assert graph_multiply(e, e).allclose(e)
    assert graph_multiply(graph_multiply(e1, e2), e1).allclose(e1 * shrink)
    assert graph_multiply(graph_multiply(e2, e1), e2).allclose(e2 * shrink)
    assert graph_multiply(graph_multiply(e2, e3), e2).allclose(e2 * shrink)
    assert graph_multiply(e1, e3).allclose(graph_multiply(e3, e1))
