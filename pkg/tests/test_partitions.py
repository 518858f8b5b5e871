import pytest

from opalg.config import SizeGuards
from opalg.exceptions import SizeGuardError
from opalg.partitions import (
    ColoredWord,
    Partition,
    PartitionClass,
    TwoRowPartition,
    bell,
    catalan,
    delta,
    enumerate_class,
    fatten,
    is_noncrossing,
    join,
    meet,
    mobius,
    mobius_matrix,
    narayana,
    one_block,
    refinement_matrix,
    shrink,
    singletons,
)


@pytest.mark.parametrize(
    "tag,k,expected",
    [
        ("P", 4, 15),
        ("NC", 4, 14),
        ("P2", 4, 3),
        ("NC2", 4, 2),
        ("Peven", 4, 4),
        ("NCeven", 4, 3),
        ("P2", 3, 0),
        ("P", 0, 1),
        ("NC2", 0, 1),
    ],
)
def test_should_count_partition_class(tag, k, expected):
    assert len(enumerate_class(PartitionClass.parse(tag), k)) == expected


@pytest.mark.parametrize("k", range(1, 8))
def test_should_count_noncrossing_by_catalan(k):
    assert len(enumerate_class(PartitionClass.NC, k)) == catalan(k)
    assert len(enumerate_class(PartitionClass.NC2, 2 * k)) == catalan(k)
    assert sum(narayana(k, r) for r in range(1, k + 1)) == catalan(k)


@pytest.mark.parametrize("k", range(0, 7))
def test_should_count_all_partitions_by_bell(k):
    assert len(enumerate_class(PartitionClass.P, k)) == bell(k)


def test_should_list_members_once():
    members = enumerate_class(PartitionClass.P, 5)
    assert len(set(members)) == len(members)


@pytest.mark.parametrize(
    "tag,word,expected",
    [
        ("MatchedNC2", "o*o*", 2),
        ("MatchedP2", "o*o*", 2),
        ("MatchedNC2", "oo**", 1),
        ("MatchedP2", "oo**", 2),
        ("MatchedP2", "oooo", 0),
    ],
)
def test_should_count_matched_pairings(tag, word, expected):
    assert len(enumerate_class(PartitionClass.parse(tag), 4, ColoredWord.parse(word))) == expected


def test_should_require_word_for_matched_classes():
    with pytest.raises(ValueError, match="requires a colored word"):
        enumerate_class(PartitionClass.MATCHED_NC2, 4)
    with pytest.raises(ValueError, match="Word length"):
        enumerate_class(PartitionClass.MATCHED_NC2, 4, ColoredWord.parse("o*"))


def test_should_reject_negative_k():
    with pytest.raises(ValueError):
        enumerate_class(PartitionClass.P, -1)


def test_should_refuse_enumeration_beyond_guard():
    with pytest.raises(SizeGuardError):
        enumerate_class(PartitionClass.P, 12, guards=SizeGuards(partitions=1000))


def test_should_reject_unknown_class():
    with pytest.raises(ValueError, match="Unknown partition class"):
        PartitionClass.parse("XY")


def test_should_parse_and_print_block_form():
    p = Partition.parse("{2}{3,1}")
    assert str(p) == "{1,3}{2}"
    assert p.block_count == 2
    assert p.to_json() == [[1, 3], [2]]
    assert p.labels == (0, 1, 0)


def test_should_reject_overlapping_blocks():
    with pytest.raises(ValueError):
        Partition([[1, 2], [2, 3]])


def test_should_detect_crossing():
    assert not is_noncrossing(Partition.parse("{1,3}{2,4}"))
    assert is_noncrossing(Partition.parse("{1,4}{2,3}"))


def test_should_join_and_meet():
    p = Partition.parse("{1,2}{3}{4}")
    q = Partition.parse("{1}{2,3}{4}")
    assert join(p, q) == Partition.parse("{1,2,3}{4}")
    assert meet(p, q) == Partition.parse("{1}{2}{3}{4}")


@pytest.mark.parametrize("k,expected", [(1, 1), (2, -1), (3, 2), (4, -6)])
def test_should_compute_mobius_of_partition_lattice(k, expected):
    bottom = Partition([[i] for i in range(1, k + 1)])
    top = Partition([range(1, k + 1)])
    assert mobius(bottom, top) == expected


def test_should_compute_mobius_of_noncrossing_lattice():
    bottom = Partition([[1], [2], [3], [4]])
    top = Partition([[1, 2, 3, 4]])
    assert mobius(bottom, top, PartitionClass.NC) == -5


def test_should_vanish_mobius_off_interval():
    assert mobius(Partition.parse("{1,2}{3}"), Partition.parse("{1}{2,3}")) == 0


@pytest.mark.parametrize("tag", ["P", "NC"])
@pytest.mark.parametrize("k", range(1, 5))
def test_should_invert_refinement_matrix(tag, k):
    klass = PartitionClass.parse(tag)
    zeta = refinement_matrix(klass, k)
    mu = mobius_matrix(klass, k)
    size = len(zeta)
    product = [[sum(zeta[i][r] * mu[r][j] for r in range(size)) for j in range(size)] for i in range(size)]
    assert product == [[int(i == j) for j in range(size)] for i in range(size)]


def test_should_fatten_and_shrink():
    p = Partition.parse("{1,3}{2}")
    q = fatten(p)
    assert q == Partition.parse("{1,6}{2,5}{3,4}")
    assert shrink(q) == p


def test_should_evaluate_kronecker_delta():
    p = Partition.parse("{1,3}{2}")
    assert delta(p, [5, 7, 5]) == 1
    assert delta(p, [5, 7, 6]) == 0


def test_should_compose_two_row_partitions_with_loops():
    cap = TwoRowPartition.from_rows([0, 0], [])
    cup = TwoRowPartition.from_rows([], [0, 0])
    result, loops = cup.compose(cap)
    assert (result.upper, result.lower) == (0, 0)
    assert loops == 1


def test_should_turn_two_row_partition_upside_down():
    x = TwoRowPartition.from_rows([0, 1], [0, 2])
    assert x.turn_upside_down().rows() == TwoRowPartition.from_rows([0, 2], [0, 1]).rows()


def test_should_order_extreme_partitions():
    bottom, top = singletons(3), one_block(3)
    assert (bottom.block_count, top.block_count) == (3, 1)
    assert bottom.refines(top)
    assert not top.refines(bottom)
    assert Partition.parse("{1,3}{2}").refines(top)
