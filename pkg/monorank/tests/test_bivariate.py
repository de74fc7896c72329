import numpy as np
import polars as pl
import pytest

from monorank.bivariate import (
    RankTable,
    akm_tables_by_recurrence,
    bkm_table,
    expand_rank_kernel,
    extract_z_coefficient,
    iter_rank_kernels,
)
from monorank.exceptions import IndexOutOfRange, TruncationMismatch
from monorank.series import QSeries


def test_level_zero_kernel() -> None:
    kernel = expand_rank_kernel(0, 1, 5)

    assert kernel.nonzero_items() == [(0, 0, 1)]
    assert extract_z_coefficient(kernel, 0) == QSeries.constant(1, 5)


def test_level_one_kernel_has_parity_rows() -> None:
    kernel = expand_rank_kernel(1, 1, 7)

    assert kernel.row(1).coeffs == (0, 1, 0, 1, 0, 1, 0, 1)
    assert kernel.row(0).coeffs == (1, 0, 1, 0, 1, 0, 1, 0)
    assert kernel.row(3).lowest_order() == 3


def test_level_two_kernel_entry() -> None:
    kernel = expand_rank_kernel(2, 1, 8)

    # z q^4 comes from (zq)(zq^2)(q/z) and (zq)^2 (q^2/z)
    assert kernel.entry(1, 4) == 2
    assert kernel.asymmetries() == []
    assert kernel.support_violations() == []


def test_step_two_kernel() -> None:
    kernel = expand_rank_kernel(1, 2, 6)

    assert kernel.row(1).coeffs == (0, 0, 1, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        expand_rank_kernel(1, 3, 6)


def test_recurrence_matches_kernel_expansion() -> None:
    by_recurrence = akm_tables_by_recurrence(4, 12)
    kernels = list(iter_rank_kernels(1, 12, k_max=4))

    assert len(by_recurrence) == len(kernels) == 5
    for ours, expected in zip(by_recurrence, kernels):
        assert ours.mismatches(expected) == []


def test_dividing_by_the_next_factors() -> None:
    level_one, level_two = list(iter_rank_kernels(1, 10, k_max=2))[1:]

    multiplied = level_two.times_linear_factor(1, 2).times_linear_factor(-1, 2)
    assert multiplied == level_one


def test_bkm_table() -> None:
    b_table = bkm_table(1, 10)

    assert b_table.m_min == -12
    assert b_table.entry(0, 2) == 0
    assert b_table.entry(0, 0) == 1
    for n in range(11):
        for m in range(-12, 11):
            assert b_table.entry(m, n) == -b_table.entry(-m - 2, n)
        assert b_table.entry(-1, n) == 0


def test_bkm_needs_matching_order() -> None:
    with pytest.raises(TruncationMismatch):
        bkm_table(1, 10, a_table=expand_rank_kernel(1, 1, 8))


def test_row_outside_the_stored_range() -> None:
    kernel = expand_rank_kernel(1, 1, 4)

    with pytest.raises(IndexOutOfRange):
        kernel.row(5)

    assert kernel.entry(5, 4) == 0


def test_mismatches_are_ordered() -> None:
    table = RankTable.from_counts({(0, 0): 1, (1, 2): 1}, 3, 'a')
    other = RankTable.from_counts({(0, 0): 1, (-1, 2): 1, (0, 3): 5}, 3, 'b')

    assert table.mismatches(other) == [(-1, 2, 0, 1), (1, 2, 1, 0), (0, 3, 0, 5)]
    assert table != other

    with pytest.raises(TruncationMismatch):
        table.mismatches(RankTable.from_counts({}, 4, 'c'))


def test_entries_are_read_only() -> None:
    table = expand_rank_kernel(1, 1, 4)

    with pytest.raises(ValueError):
        table.entries[0, 0] = 3


def test_to_polars() -> None:
    df = expand_rank_kernel(1, 1, 2).to_polars()

    assert df.columns == ['m', 'n', 'count']
    assert df.schema['count'] == pl.Utf8
    assert df.rows() == [(0, 0, '1'), (-1, 1, '1'), (1, 1, '1'), (-2, 2, '1'), (0, 2, '1'), (2, 2, '1')]


def test_to_polars_keeps_counts_past_64_bits() -> None:
    table = RankTable.from_counts({(0, 0): 2**63, (-1, 1): -(2**70), (1, 1): 5}, 1, 'large')

    assert table.to_polars().write_csv() == f'm,n,count\n0,0,{2**63}\n-1,1,{-(2**70)}\n1,1,5\n'


def test_row_sums() -> None:
    table = RankTable.from_grid(np.array([[0, 1, 0], [2, 0, 3]], dtype=object), -1, 'small')

    assert table.row_sums() == [1, 5]
    assert table.asymmetries() == [(1, 1, 3, 2)]
