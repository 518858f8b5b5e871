import json
import math
from fractions import Fraction

import pytest

from opalg import graphinv
from opalg.graphinv import InclusionData, RootedBipartiteGraph
from opalg.series import FormalSeries
from tests.fixtures.graphs import path3, star


def test_should_count_loops_at_root():
    assert graphinv.poincare(star(3), 4).coefficients == [1, 3, 9, 27, 81]
    assert graphinv.poincare(path3(), 4).coefficients == [1, 1, 2, 4, 8]


def test_should_reject_disconnected_graph():
    with pytest.raises(ValueError, match="connected"):
        RootedBipartiteGraph(["a1", "a2"], ["b1", "b2"], [[1, 0], [0, 1]], "a1")


def test_should_reject_root_outside_layer_a():
    with pytest.raises(ValueError, match="Root"):
        RootedBipartiteGraph(["a"], ["b"], [[1]], "b")


def test_should_read_graph_json():
    text = json.dumps({"layerA": ["a"], "layerB": ["b1", "b2"], "edges": [["a", "b1", 1], ["a", "b2", 2]], "root": "a"})
    g = RootedBipartiteGraph.from_json(text)
    assert g.m == ((1, 2),)
    assert json.loads(g.to_json())["edges"] == [["a", "b1", 1], ["a", "b2", 2]]


@pytest.mark.parametrize("n", range(2, 9))
def test_should_give_index_of_a_graphs(n):
    assert graphinv.graph_norm(graphinv.ade("A", n)) ** 2 == pytest.approx(4 * math.cos(math.pi / (n + 1)) ** 2, abs=1e-9)


@pytest.mark.parametrize(
    "family,n",
    [("A", 2), ("A", 3), ("A", 5), ("Atilde", 1), ("Atilde", 2), ("D", 4), ("Dtilde", 5), ("E6", 0), ("E8", 0)],
)
def test_should_match_closed_form_t_series(family, n):
    text, divide_by = graphinv.t_formula(family, n)
    assert graphinv.t_series(graphinv.ade(family, n), 16) == graphinv.xi_text(text, 16, divide_by)


def test_should_refuse_short_poincare_series():
    with pytest.raises(ValueError):
        graphinv.theta(FormalSeries([1, 1], 1), 4)


def test_should_keep_theta_nonnegative_for_matrix_inclusion():
    g = graphinv.inclusion_graph(InclusionData.of([1], [[3]]))
    assert min(graphinv.theta(g, 12).coefficients) >= 0


def test_should_give_exact_spectral_measure():
    measure = graphinv.exact_spectral_measure(star(3))
    assert measure.atoms == ((3, Fraction(1)),)


def test_should_give_float_spectral_measure():
    measure = graphinv.spectral_measure(path3())
    positions = [x for x, _ in measure.atoms]
    weights = [w for _, w in measure.atoms]
    assert positions == pytest.approx([0, 2], abs=1e-9)
    assert weights == pytest.approx([0.5, 0.5])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_should_spread_affine_a_uniformly_on_roots(n):
    measure = graphinv.circular_measure(graphinv.ade("Atilde", n))
    assert len(measure.atoms) == 2 * n
    for z, w in measure.atoms:
        assert abs(z ** (2 * n) - 1) < 1e-9
        assert w == pytest.approx(1 / (2 * n))


@pytest.mark.parametrize("n", range(2, 7))
def test_should_match_circular_formula_for_a_graphs(n):
    g = graphinv.ade("A", n)
    assert graphinv.circular_moments(g, 10) == graphinv.formula_moments(graphinv.circular_formula("A", n), 10)


def test_should_relate_circular_moments_to_t_series():
    g = graphinv.ade("A", 2)
    q = FormalSeries.variable(1, "q")
    assert graphinv.stieltjes_series(graphinv.circular_moments(g, 1)).coefficients == [2, -1]
    assert (1 + graphinv.t_series(g, 1) * (1 - q)).coefficients == [2, -1]


def test_should_flag_real_atoms_above_norm_two():
    assert graphinv.circular_measure(star(5)).experimental


def test_should_check_markov_inclusion():
    report = graphinv.markov_check(InclusionData.of([1], [[1, 1]]))
    assert report.b == (1, 1)
    assert report.r == 2
    assert report.markov and report.integral


def test_should_detect_non_markov_inclusion():
    assert not graphinv.markov_check(InclusionData.of([1, 1], [[1, 0], [1, 1]])).markov


def test_should_grow_tower_norms_by_index():
    levels = graphinv.jones_tower(InclusionData.of([1], [[1, 1]]), 3)
    assert [level.norm for level in levels] == pytest.approx([math.sqrt(2), 2, 2 * math.sqrt(2)])
    assert all(level.consistent for level in levels)


def test_should_reflect_inclusion_in_basic_construction():
    reflected = graphinv.basic_construction(InclusionData.of([1], [[1, 1]]))
    assert reflected.a == (1, 1)
    assert reflected.m == ((1,), (1,))


def test_should_reject_unknown_family():
    with pytest.raises(ValueError, match="Unknown family"):
        graphinv.ade("F4")


def test_should_expand_cyclotomic_quotients():
    assert graphinv.xi([], [(1, False)], 4).coefficients == [1, 1, 1, 1, 1]
    assert graphinv.xi([(1, True)], [], 3).coefficients == [1, 1, 0, 0]
    assert graphinv.xi([(2, False)], [(1, False)], 3, divide_by=1).coefficients == [1, 2, 2, 2]


def test_should_refuse_disconnected_graph():
    with pytest.raises(ValueError, match="connected"):
        RootedBipartiteGraph(["v1", "v3"], ["v2", "v4"], [[1, 0], [0, 1]], "v1")
