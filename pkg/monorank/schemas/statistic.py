from __future__ import annotations

from typing import Literal, get_args

RankStatistic = Literal['dyson', 'd_rank', 'm2_rank']
M2Convention = Literal['floor', 'ceiling']
ConventionChoice = Literal['auto', 'floor', 'ceiling']

ALL_STATISTICS: tuple[RankStatistic, ...] = get_args(RankStatistic)
ALL_CONVENTIONS: tuple[M2Convention, ...] = ('ceiling', 'floor')
"""Ordered so that `auto` prefers the ceiling convention when both fit, which only happens for tiny orders"""

OVERPARTITION_STATISTICS: tuple[RankStatistic, ...] = ('d_rank', 'm2_rank')


def statistic_from_cli(name: str) -> RankStatistic:
    """The CLI spells statistics with dashes, e.g. `d-rank`"""
    value = name.replace('-', '_')
    if value not in ALL_STATISTICS:
        raise ValueError(f'Unknown statistic {name}. Supported statistics: {ALL_STATISTICS}')
    return value  # type: ignore


def counts_overpartitions(statistic: RankStatistic) -> bool:
    return statistic in OVERPARTITION_STATISTICS
