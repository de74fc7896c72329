from monorank.bivariate import RankTable, akm_tables_by_recurrence, bkm_table, expand_rank_kernel
from monorank.partitions import (
    OverPartition,
    Partition,
    d_rank,
    dyson_rank,
    enumerate_overpartitions,
    enumerate_partitions,
    m2_rank,
    oracle_rank_table,
)
from monorank.rank_gf import (
    FmkTable,
    first_difference_series,
    fmk_by_definition,
    fmk_by_recurrence,
    fmk_closed_form,
    gf_rank_table,
)
from monorank.series import QSeries, finite_pochhammer
from monorank.store import RankTableStore

__all__ = [
    'QSeries',
    'finite_pochhammer',
    'RankTable',
    'expand_rank_kernel',
    'akm_tables_by_recurrence',
    'bkm_table',
    'Partition',
    'OverPartition',
    'enumerate_partitions',
    'enumerate_overpartitions',
    'dyson_rank',
    'd_rank',
    'm2_rank',
    'oracle_rank_table',
    'FmkTable',
    'gf_rank_table',
    'fmk_by_definition',
    'fmk_by_recurrence',
    'fmk_closed_form',
    'first_difference_series',
    'RankTableStore',
]
