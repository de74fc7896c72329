from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np
import polars as pl

from monorank.exceptions import IndexOutOfRange, TruncationMismatch
from monorank.series import QSeries

logger = logging.getLogger(__name__)


def empty_grid(max_n: int, m_min: int, m_max: int) -> np.ndarray:
    """A zero filled object grid, so every cell holds an exact python int"""
    if max_n < 0:
        raise ValueError(f'max_n needs to be nonnegative, got {max_n}')
    return np.zeros((max_n + 1, m_max - m_min + 1), dtype=object)


def add_shifted(target: np.ndarray, source: np.ndarray, shift: int, factor: int = 1) -> None:
    """target[m] += factor * source[m + shift] for every column where both exist"""
    width = target.shape[-1]
    if abs(shift) >= width:
        return
    if shift >= 0:
        target[..., : width - shift] += factor * source[..., shift:]
    else:
        target[..., -shift:] += factor * source[..., : width + shift]


@dataclass(frozen=True, eq=False)
class RankTable:
    """
    Exact coefficients c(m, n) of a series sum c(m, n) z^m q^n for 0 <= n <= max_n.

    The grid is stored dense, row n and column m - m_min.
    Anything outside the stored m-range is zero.
    """

    max_n: int
    m_min: int
    entries: np.ndarray
    label: str

    def __post_init__(self) -> None:
        if self.entries.shape[0] != self.max_n + 1:
            raise ValueError(f'Expected {self.max_n + 1} rows, got {self.entries.shape[0]}')
        self.entries.flags.writeable = False

    @staticmethod
    def from_grid(grid: np.ndarray, m_min: int, label: str) -> RankTable:
        return RankTable(max_n=grid.shape[0] - 1, m_min=m_min, entries=grid, label=label)

    @staticmethod
    def from_counts(counts: dict[tuple[int, int], int], max_n: int, label: str) -> RankTable:
        grid = empty_grid(max_n, -max_n, max_n)
        for (m, n), value in counts.items():
            if abs(m) > max_n:
                raise ValueError(f'Can not store m={m} in a table of order {max_n}')
            grid[n, m + max_n] += value
        return RankTable.from_grid(grid, -max_n, label)

    @property
    def m_max(self) -> int:
        return self.m_min + self.entries.shape[1] - 1

    def entry(self, m: int, n: int) -> int:
        if 0 <= n <= self.max_n and self.m_min <= m <= self.m_max:
            return int(self.entries[n, m - self.m_min])
        return 0

    def row(self, m: int) -> QSeries:
        if not self.m_min <= m <= self.m_max:
            raise IndexOutOfRange(
                f'm={m} is outside the stored range [{self.m_min}, {self.m_max}] of {self.label}'
            )
        return QSeries.from_coefficients(self.entries[:, m - self.m_min], self.max_n)

    def nonzero_items(self) -> list[tuple[int, int, int]]:
        """(m, n, count) for every nonzero entry, sorted by n and then m"""
        items = []
        for n in range(self.max_n + 1):
            for column, value in enumerate(self.entries[n]):
                if value:
                    items.append((column + self.m_min, n, int(value)))
        return items

    def row_sums(self) -> list[int]:
        return [int(sum(self.entries[n])) for n in range(self.max_n + 1)]

    def support_violations(self) -> list[tuple[int, int]]:
        return [(m, n) for m, n, _ in self.nonzero_items() if abs(m) > n]

    def asymmetries(self) -> list[tuple[int, int, int, int]]:
        """(m, n, c(m, n), c(-m, n)) for m > 0 where the table is not symmetric in m"""
        found = []
        bound = max(abs(self.m_min), abs(self.m_max))
        for n in range(self.max_n + 1):
            for m in range(1, bound + 1):
                value, mirrored = self.entry(m, n), self.entry(-m, n)
                if value != mirrored:
                    found.append((m, n, value, mirrored))
        return found

    def mismatches(self, other: RankTable) -> list[tuple[int, int, int, int]]:
        """
        (m, n, ours, theirs) for every differing entry.
        Ordered by n, then |m|, then m, so the first item is the smallest disagreement.
        """
        if self.max_n != other.max_n:
            raise TruncationMismatch(
                f'Can not compare {self.label} at order {self.max_n} '
                f'with {other.label} at order {other.max_n}'
            )
        m_min = min(self.m_min, other.m_min)
        m_max = max(self.m_max, other.m_max)
        found = []
        for n in range(self.max_n + 1):
            for m in sorted(range(m_min, m_max + 1), key=lambda value: (abs(value), value)):
                ours, theirs = self.entry(m, n), other.entry(m, n)
                if ours != theirs:
                    found.append((m, n, ours, theirs))
        return found

    def times_linear_factor(self, z_power: int, q_power: int, coefficient: int = -1) -> RankTable:
        """Multiplies by (1 + coefficient * z^z_power * q^q_power), keeping the m-range"""
        grid = np.array(self.entries, dtype=object)
        for n in range(self.max_n, q_power - 1, -1):
            add_shifted(grid[n], self.entries[n - q_power], -z_power, coefficient)
        return RankTable.from_grid(grid, self.m_min, self.label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankTable):
            return NotImplemented
        return self.max_n == other.max_n and not self.mismatches(other)

    __hash__ = None  # type: ignore

    def to_polars(self) -> pl.DataFrame:
        """Counts are exact decimal strings"""
        items = self.nonzero_items()
        return pl.DataFrame(
            {
                'm': [m for m, _, _ in items],
                'n': [n for _, n, _ in items],
                'count': [str(count) for _, _, count in items],
            },
            schema={'m': pl.Int64, 'n': pl.Int64, 'count': pl.Utf8},
        ).sort(['n', 'm'])


def extract_z_coefficient(table: RankTable, m: int) -> QSeries:
    return table.row(m)


def _divide_by_linear_factor(grid: np.ndarray, z_power: int, q_power: int) -> None:
    """In place multiplication by 1 / (1 - z^z_power q^q_power)"""
    for n in range(q_power, grid.shape[0]):
        add_shifted(grid[n], grid[n - q_power], -z_power)


def iter_rank_kernels(step: int, max_n: int, k_max: int | None = None) -> Iterator[RankTable]:
    """
    Yields the tables of 1 / ((z q^step; q^step)_k (q^step / z; q^step)_k) for k = 0, 1, 2, ...

    Each level divides the previous one by (1 - z q^(step k)) (1 - q^(step k) / z).
    """
    if step not in (1, 2):
        raise ValueError(f'The kernel step needs to be 1 or 2, got {step}')

    grid = empty_grid(max_n, -max_n, max_n)
    grid[0, max_n] = 1
    k = 0
    while k_max is None or k <= k_max:
        yield RankTable.from_grid(grid.copy(), -max_n, f'kernel(k={k}, step={step})')
        k += 1
        power = step * k
        if power <= max_n:
            _divide_by_linear_factor(grid, 1, power)
            _divide_by_linear_factor(grid, -1, power)
        logger.debug(f'Expanded the step {step} kernel to level {k} at order {max_n}')


def expand_rank_kernel(k: int, step: int, max_n: int) -> RankTable:
    if k < 0:
        raise ValueError(f'k needs to be nonnegative, got {k}')
    *_, table = iter_rank_kernels(step, max_n, k_max=k)
    return table


def lift_level(table: RankTable, k: int) -> RankTable:
    """
    Applies the level recurrence

        c_(k+1, m)(n) = sum_(r=0)^(n // (k+1)) sum_(i=0)^r c_(k, m - r + 2i)(n - r(k+1))

    which turns a_k into a_(k+1), and equally b_k into b_(k+1).
    """
    grid = empty_grid(table.max_n, table.m_min, table.m_max)
    for n in range(table.max_n + 1):
        for r in range(n // (k + 1) + 1):
            source = table.entries[n - r * (k + 1)]
            for i in range(r + 1):
                add_shifted(grid[n], source, 2 * i - r)
    return RankTable.from_grid(grid, table.m_min, f'{table.label.split("(")[0]}(k={k + 1})')


def akm_tables_by_recurrence(k_max: int, max_n: int) -> list[RankTable]:
    if k_max < 0:
        raise ValueError(f'k_max needs to be nonnegative, got {k_max}')

    grid = empty_grid(max_n, -max_n, max_n)
    grid[0, max_n] = 1
    tables = [RankTable.from_grid(grid, -max_n, 'a(k=0)')]
    for k in range(k_max):
        tables.append(lift_level(tables[-1], k))
        logger.debug(f'Built a_(k,m)(n) for k={k + 1} by recurrence')
    return tables


def bkm_table(k: int, max_n: int, a_table: RankTable | None = None) -> RankTable:
    """b_(k,m)(n) = a_(k,m)(n) - a_(k,m+2)(n) for -max_n - 2 <= m <= max_n"""
    if a_table is None:
        a_table = expand_rank_kernel(k, 1, max_n)
    if a_table.max_n != max_n:
        raise TruncationMismatch(f'Expected an a-table of order {max_n}, got {a_table.max_n}')

    m_min = -max_n - 2
    grid = empty_grid(max_n, m_min, max_n)
    for n in range(max_n + 1):
        for m in range(m_min, max_n + 1):
            grid[n, m - m_min] = a_table.entry(m, n) - a_table.entry(m + 2, n)
    return RankTable.from_grid(grid, m_min, f'b(k={k})')
