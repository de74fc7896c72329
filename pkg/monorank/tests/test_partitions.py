from collections import Counter

import pytest

from monorank.partitions import (
    OVERLINE,
    OverPartition,
    Partition,
    d_rank,
    dyson_rank,
    enumerate_overpartitions,
    enumerate_partitions,
    m2_rank,
    oracle_rank_table,
    overpartition_counts,
    partition_counts,
)


def test_partition_counts() -> None:
    assert [len(list(enumerate_partitions(n))) for n in [0, 4, 20]] == [1, 5, 627]
    assert list(enumerate_partitions(0)) == [Partition(())]
    assert partition_counts(20)[20] == 627


def test_partitions_are_reverse_lexicographic() -> None:
    assert [partition.parts for partition in enumerate_partitions(4)] == [
        (4,),
        (3, 1),
        (2, 2),
        (2, 1, 1),
        (1, 1, 1, 1),
    ]


def test_overpartition_counts() -> None:
    assert len(list(enumerate_overpartitions(4))) == 14
    assert len(list(enumerate_overpartitions(3))) == 8
    assert list(enumerate_overpartitions(0)) == [OverPartition(())]
    assert overpartition_counts(6).coeffs == (1, 2, 4, 8, 14, 24, 40)


def test_enumerated_overpartitions_are_distinct() -> None:
    for n in range(9):
        objects = list(enumerate_overpartitions(n))
        assert len(set(objects)) == len(objects) == overpartition_counts(8)[n]


def test_invalid_objects() -> None:
    with pytest.raises(ValueError):
        Partition((1, 2))

    with pytest.raises(ValueError):
        Partition((2, 0))

    with pytest.raises(ValueError):
        OverPartition((2, 1), frozenset({3}))


def test_dyson_rank() -> None:
    assert dyson_rank(Partition((4, 1))) == 2
    assert dyson_rank(Partition(())) == 0
    assert dyson_rank(Partition((1, 1, 1, 1))) == -3


def test_d_rank() -> None:
    assert d_rank(OverPartition((3, 1), frozenset({3}))) == 1
    assert d_rank(OverPartition((1, 1, 1, 1), frozenset({1}))) == -3


def test_m2_rank_example() -> None:
    overpartition = OverPartition((7, 5, 4, 4, 2, 2, 1, 1), frozenset({7, 4, 2}))

    assert overpartition.odd_non_overlined == 3
    assert overpartition.chi == 0
    assert m2_rank(overpartition, 'floor') == -2
    assert m2_rank(overpartition, 'ceiling') == -1
    assert m2_rank(OverPartition(())) == 0


def test_m2_rank_of_size_one() -> None:
    plain, overlined = OverPartition((1,)), OverPartition((1,), frozenset({1}))

    assert plain.chi == 1
    assert [m2_rank(plain), m2_rank(overlined)] == [0, 0]
    assert [m2_rank(plain, 'floor'), m2_rank(overlined, 'floor')] == [-1, -1]


def test_rendering() -> None:
    assert str(OverPartition((2, 2, 1), frozenset({2}))) == f'(2{OVERLINE}, 2, 1)'


def test_d_rank_oracle_rows() -> None:
    table = oracle_rank_table('d_rank', 4)

    assert {m: table.entry(m, 3) for m in range(-3, 4) if table.entry(m, 3)} == {2: 2, 0: 4, -2: 2}
    assert table.entry(0, 4) == 2
    assert table.entry(0, 3) == 4
    assert table.row_sums() == [1, 2, 4, 8, 14]


def test_dyson_oracle() -> None:
    table = oracle_rank_table('dyson', 6)

    assert table.entry(0, 0) == 1
    assert table.row_sums() == list(partition_counts(6).coeffs)


def test_d_rank_counting_matches_the_objects() -> None:
    max_n = 9
    table = oracle_rank_table('d_rank', max_n)

    for n in range(max_n + 1):
        counted = Counter(d_rank(item) for item in enumerate_overpartitions(n))
        expected = {m: table.entry(m, n) for m in range(-n, n + 1) if table.entry(m, n)}
        assert counted == Counter(expected)


@pytest.mark.parametrize('convention', ['floor', 'ceiling'])
def test_m2_counting_matches_the_objects(convention: str) -> None:
    max_n = 8
    table = oracle_rank_table('m2_rank', max_n, convention)  # type: ignore

    for n in range(max_n + 1):
        overpartitions = enumerate_overpartitions(n)
        counted = Counter(m2_rank(item, convention) for item in overpartitions)  # type: ignore
        expected = {m: table.entry(m, n) for m in range(-n, n + 1) if table.entry(m, n)}
        assert counted == Counter(expected)


@pytest.mark.parametrize('statistic', ['d_rank', 'm2_rank'])
def test_ranks_stay_within_the_size(statistic: str) -> None:
    table = oracle_rank_table(statistic, 10)  # type: ignore
    assert table.support_violations() == []
