from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterator

from monorank.bivariate import RankTable
from monorank.schemas.statistic import M2Convention, RankStatistic
from monorank.series import QSeries, finite_pochhammer

logger = logging.getLogger(__name__)

OVERLINE = '\u0305'


@dataclass(frozen=True, slots=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(part < 1 for part in self.parts):
            raise ValueError(f'Parts need to be positive integers, got {self.parts}')
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f'Parts need to be weakly decreasing, got {self.parts}')

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def distinct_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.parts), reverse=True))


@dataclass(frozen=True, slots=True)
class OverPartition:
    """
    A partition where the first occurrence of each size may be overlined.

    Stored as the weakly decreasing parts together with the set of overlined sizes,
    so at most one copy per size can carry the overline.
    """

    parts: tuple[int, ...]
    overlined: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        Partition(self.parts)
        if not self.overlined <= set(self.parts):
            raise ValueError(f'Overlined sizes {set(self.overlined)} need to be parts of {self.parts}')

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def odd_non_overlined(self) -> int:
        """The number of parts in the partition of non-overlined odd parts"""
        odd_parts = sum(1 for part in self.parts if part % 2)
        return odd_parts - sum(1 for size in self.overlined if size % 2)

    @property
    def chi(self) -> int:
        largest = self.largest
        return int(largest % 2 == 1 and largest not in self.overlined)

    def __str__(self) -> str:
        rendered = []
        for index, part in enumerate(self.parts):
            is_first = index == 0 or self.parts[index - 1] != part
            rendered.append(f'{part}{OVERLINE}' if is_first and part in self.overlined else str(part))
        return f'({", ".join(rendered)})'


def _partitions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of n once, in reverse lexicographic order"""
    if n < 0:
        raise ValueError(f'n needs to be nonnegative, got {n}')
    for parts in _partitions(n, n):
        yield Partition(parts)


def enumerate_overpartitions(n: int) -> Iterator[OverPartition]:
    for partition in enumerate_partitions(n):
        sizes = partition.distinct_sizes
        for mask in range(1 << len(sizes)):
            overlined = frozenset(size for bit, size in enumerate(sizes) if mask >> bit & 1)
            yield OverPartition(partition.parts, overlined)


def dyson_rank(partition: Partition) -> int:
    return partition.largest - partition.length


def d_rank(overpartition: OverPartition) -> int:
    return overpartition.largest - overpartition.length


def _half(largest: int, convention: M2Convention) -> int:
    if convention == 'floor':
        return largest // 2
    if convention == 'ceiling':
        return (largest + 1) // 2
    raise ValueError(f'Unknown M2-rank convention {convention}')


def m2_rank(overpartition: OverPartition, convention: M2Convention = 'ceiling') -> int:
    """
    half(largest part) - number of parts + number of non-overlined odd parts - chi.

    Where half rounds down or up depending on the convention.
    Only `ceiling` agrees with the M2-rank generating function.
    """
    if not overpartition.parts:
        return 0
    return (
        _half(overpartition.largest, convention)
        - overpartition.length
        + overpartition.odd_non_overlined
        - overpartition.chi
    )


def _m2_rank_counts(partition: Partition, convention: M2Convention) -> Counter[int]:
    """
    The M2-ranks of every overpartition with the shape of `partition`.

    Overlining an odd size lowers the rank by one, except for an odd largest size
    where it also clears chi. So the ranks only depend on how many of the other
    odd sizes are overlined, and the counts are binomial.
    """
    if not partition.parts:
        return Counter({0: 1})

    sizes = partition.distinct_sizes
    largest_is_odd = sizes[0] % 2 == 1
    odd_sizes = sum(1 for size in sizes if size % 2)
    odd_parts = sum(1 for part in partition.parts if part % 2)
    base = _half(sizes[0], convention) - partition.length + odd_parts - int(largest_is_odd)

    # Sizes whose overline leaves the rank unchanged
    free_sizes = len(sizes) - odd_sizes + int(largest_is_odd)
    shifting_sizes = odd_sizes - int(largest_is_odd)

    counts: Counter[int] = Counter()
    for overlined in range(shifting_sizes + 1):
        counts[base - overlined] += comb(shifting_sizes, overlined) << free_sizes
    return counts


def oracle_rank_table(
    statistic: RankStatistic, max_n: int, convention: M2Convention = 'ceiling'
) -> RankTable:
    """Counts the objects of each size n <= max_n by the value of the statistic"""
    if max_n < 0:
        raise ValueError(f'max_n needs to be nonnegative, got {max_n}')

    counts: Counter[tuple[int, int]] = Counter()
    for n in range(max_n + 1):
        for partition in enumerate_partitions(n):
            if statistic == 'dyson':
                counts[(dyson_rank(partition), n)] += 1
            elif statistic == 'd_rank':
                # The overlines do not change the D-rank, so a shape counts once per overline subset
                counts[(partition.largest - partition.length, n)] += 1 << len(partition.distinct_sizes)
            elif statistic == 'm2_rank':
                for rank, amount in _m2_rank_counts(partition, convention).items():
                    counts[(rank, n)] += amount
            else:
                raise ValueError(f'Unknown statistic {statistic}')
        logger.debug(f'Enumerated size {n} for the {statistic} oracle')

    label = f'oracle({statistic}, {convention})' if statistic == 'm2_rank' else f'oracle({statistic})'
    return RankTable.from_counts(dict(counts), max_n, label)


def partition_counts(max_n: int) -> QSeries:
    """p(n) for n <= max_n from the product 1 / (q;q)_inf"""
    return finite_pochhammer(1, 1, 1, max_n, max_n).inverse()


def overpartition_counts(max_n: int) -> QSeries:
    """The number of overpartitions of n from (-q;q)_inf / (q;q)_inf"""
    return finite_pochhammer(-1, 1, 1, max_n, max_n) * partition_counts(max_n)
