import pytest

from monorank.bivariate import RankTable
from monorank.exceptions import IndexOutOfRange, UnsupportedLevel
from monorank.partitions import oracle_rank_table
from monorank.rank_gf import (
    first_difference_series,
    fmk_by_definition,
    fmk_by_recurrence,
    fmk_closed_form,
    fmk_tables_by_definition,
    fmk_tables_by_recurrence,
    gf_rank_table,
    last_summand,
    row_first_difference,
)
from monorank.series import QSeries


def test_d_rank_generating_function(d_rank_gf_table: RankTable) -> None:
    assert d_rank_gf_table.entry(0, 1) == 2
    assert d_rank_gf_table.row_sums()[4] == 14
    assert d_rank_gf_table.entry(0, 4) == 2


def test_m2_rank_generating_function(m2_rank_gf_table: RankTable) -> None:
    assert m2_rank_gf_table.entry(0, 1) == 2
    assert m2_rank_gf_table.entry(0, 2) == 4
    assert m2_rank_gf_table.row_sums()[:5] == [1, 2, 4, 8, 14]


def test_generating_functions_match_enumeration(
    d_rank_gf_table: RankTable, d_rank_oracle_table: RankTable, dyson_gf_table: RankTable
) -> None:
    assert d_rank_gf_table.mismatches(d_rank_oracle_table) == []
    assert dyson_gf_table == oracle_rank_table('dyson', 12)


def test_only_the_ceiling_convention_matches(m2_rank_gf_table: RankTable) -> None:
    assert m2_rank_gf_table.mismatches(oracle_rank_table('m2_rank', 12, 'ceiling')) == []

    first_mismatch = m2_rank_gf_table.mismatches(oracle_rank_table('m2_rank', 12, 'floor'))[0]
    assert first_mismatch[:2] == (0, 1)


def test_summation_cutoff() -> None:
    assert last_summand('d_rank', 40) == 8
    assert last_summand('m2_rank', 40) == 40
    assert last_summand('dyson', 40) == 6
    assert gf_rank_table('d_rank', 0).nonzero_items() == [(0, 0, 1)]


def test_fmk_level_zero() -> None:
    table = fmk_by_definition(0, 3)

    assert table.row(0).coeffs == (1, -1, 0, 0)
    assert table.row(1) == QSeries.zero(3)
    assert table.row(7) == QSeries.zero(3)


def test_fmk_level_one() -> None:
    assert fmk_by_definition(1, 5).row(2).coeffs == (0, 0, 1, -1, 1, -1)
    assert fmk_closed_form(0, 1, 4).coeffs == (1, -1, 1, -1, 1)


def test_fmk_level_two_closed_form() -> None:
    table = fmk_by_definition(2, 20)

    assert table.row(0) == fmk_closed_form(0, 2, 20)
    assert fmk_closed_form(3, 2, 20)[3] == 1
    assert fmk_closed_form(3, 2, 20) == fmk_closed_form(-3, 2, 20)


def test_closed_forms_match_the_definition() -> None:
    max_n = 20
    for k, table in enumerate(fmk_tables_by_definition(2, max_n)):
        for m in range(-max_n, max_n + 1):
            assert table.row(m) == fmk_closed_form(m, k, max_n), (m, k)


def test_closed_form_levels() -> None:
    with pytest.raises(UnsupportedLevel):
        fmk_closed_form(1, 3, 10)

    with pytest.raises(ValueError):
        fmk_closed_form(1, -1, 10)


def test_recurrence_matches_the_definition() -> None:
    max_n = 15
    by_recurrence = fmk_tables_by_recurrence(4, max_n)
    by_definition = fmk_tables_by_definition(4, max_n)

    for ours, expected in zip(by_recurrence, by_definition):
        assert ours.k == expected.k
        for m in range(-max_n, max_n + 1):
            assert ours.row(m) == expected.row(m), (m, ours.k)


def test_recurrence_keeps_symmetry() -> None:
    level_three = fmk_by_recurrence(fmk_by_definition(2, 12))

    assert level_three.k == 3
    assert level_three.asymmetric_rows() == []
    assert all(level_three.row(m).lowest_order() == m for m in range(1, 13))


def test_recurrence_can_lower_the_order() -> None:
    level_two = fmk_by_recurrence(fmk_by_definition(1, 12), max_n=6)

    assert level_two.trunc_order == 6
    assert level_two.row(0) == fmk_closed_form(0, 2, 6)

    with pytest.raises(ValueError):
        fmk_by_recurrence(fmk_by_definition(1, 6), max_n=12)


def test_constant_term_of_the_zero_row() -> None:
    for table in fmk_tables_by_definition(6, 12)[2:]:
        assert table.row(0)[0] == 1


def test_first_differences_of_d_rank() -> None:
    assert first_difference_series('d_rank', 1, 12)[3] == -2
    assert first_difference_series('d_rank', 0, 12)[4] == -2
    assert first_difference_series('d_rank', 0, 12)[0] == 1
    # Rank 5 needs a part of size 6
    assert first_difference_series('d_rank', 5, 12).lowest_order() == 6


def test_first_differences_of_m2_rank() -> None:
    series = first_difference_series('m2_rank', 0, 12)

    assert series[0] == 1
    assert series.is_nonnegative(start=1)


@pytest.mark.parametrize('statistic', ['d_rank', 'm2_rank', 'dyson'])
def test_first_difference_identity(statistic: str) -> None:
    max_n = 12
    table = gf_rank_table(statistic, max_n)  # type: ignore
    fmk_tables = fmk_tables_by_definition(last_summand(statistic, max_n), max_n)  # type: ignore

    for m in range(-5, 6):
        expected = row_first_difference(table, m)
        assert first_difference_series(statistic, m, max_n, fmk_tables=fmk_tables) == expected  # type: ignore


def test_first_difference_bounds() -> None:
    with pytest.raises(IndexOutOfRange):
        first_difference_series('d_rank', 13, 12)

    with pytest.raises(ValueError):
        first_difference_series('m2_rank', 0, 12, fmk_tables=fmk_tables_by_definition(2, 12))


@pytest.mark.slow
def test_acceptance_agreement() -> None:
    for statistic in ['d_rank', 'dyson']:
        assert gf_rank_table(statistic, 30) == oracle_rank_table(statistic, 30)  # type: ignore

    m2_table = gf_rank_table('m2_rank', 30)
    assert m2_table == oracle_rank_table('m2_rank', 30, 'ceiling')
    assert m2_table.mismatches(oracle_rank_table('m2_rank', 30, 'floor'))[0][:2] == (0, 1)


@pytest.mark.slow
def test_acceptance_fmk_agreement() -> None:
    max_n = 60
    for k, table in enumerate(fmk_tables_by_recurrence(2, max_n)):
        for m in range(-40, 41):
            assert table.row(m) == fmk_closed_form(m, k, max_n)

    by_definition = fmk_tables_by_definition(6, 40)
    for ours, expected in zip(fmk_tables_by_recurrence(6, 40), by_definition):
        for m in range(-40, 41):
            assert ours.row(m) == expected.row(m)
