from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from monorank.bivariate import RankTable, empty_grid, expand_rank_kernel, iter_rank_kernels
from monorank.exceptions import IndexOutOfRange, UnsupportedLevel
from monorank.schemas.statistic import RankStatistic
from monorank.series import QSeries, finite_pochhammer

logger = logging.getLogger(__name__)


def kernel_step(statistic: RankStatistic) -> int:
    return 2 if statistic == 'm2_rank' else 1


def summand_order(statistic: RankStatistic, k: int) -> int:
    """The lowest power of q in the k-th summand of the rank generating function"""
    if statistic == 'd_rank':
        return k * (k + 1) // 2
    if statistic == 'm2_rank':
        return k
    if statistic == 'dyson':
        return k * k
    raise ValueError(f'Unknown statistic {statistic}')


def summand_weight(statistic: RankStatistic, k: int, max_n: int) -> QSeries:
    """
    The q-series multiplying the k-th rank kernel.

    d_rank: (-1;q)_k q^(k(k+1)/2), m2_rank: (-1;q)_2k q^k, dyson: q^(k^2).
    """
    if statistic == 'd_rank':
        return finite_pochhammer(-1, 0, 1, k, max_n).shift(summand_order(statistic, k))
    if statistic == 'm2_rank':
        return finite_pochhammer(-1, 0, 1, 2 * k, max_n).shift(k)
    if statistic == 'dyson':
        return QSeries.monomial(1, k * k, max_n)
    raise ValueError(f'Unknown statistic {statistic}')


def last_summand(statistic: RankStatistic, max_n: int) -> int:
    """The largest k whose summand still reaches q^max_n"""
    k = 0
    while summand_order(statistic, k + 1) <= max_n:
        k += 1
    return k


def gf_rank_table(statistic: RankStatistic, max_n: int) -> RankTable:
    """
    Expands the bivariate rank generating function up to q^max_n.

    The sum over k stops once the k-th summand starts above q^max_n, so nothing below the
    truncation order is lost.
    """
    if max_n < 0:
        raise ValueError(f'max_n needs to be nonnegative, got {max_n}')

    grid = empty_grid(max_n, -max_n, max_n)
    k_max = last_summand(statistic, max_n)
    for k, kernel in enumerate(iter_rank_kernels(kernel_step(statistic), max_n, k_max=k_max)):
        weight = summand_weight(statistic, k, max_n)
        for shift, value in enumerate(weight.coeffs):
            if value:
                grid[shift:] += value * kernel.entries[: max_n + 1 - shift]
    logger.debug(f'Summed {k_max + 1} levels of the {statistic} generating function at order {max_n}')
    return RankTable.from_grid(grid, -max_n, f'gf({statistic})')


@dataclass(frozen=True)
class FmkTable:
    """The series f_(m,k)(q) for -trunc_order <= m <= trunc_order at a fixed level k"""

    k: int
    trunc_order: int
    rows: dict[int, QSeries] = field(default_factory=dict)

    def row(self, m: int) -> QSeries:
        if m in self.rows:
            return self.rows[m]
        # k >= 1 rows start at q^|m|, and level 0 only has m = 0
        return QSeries.zero(self.trunc_order)

    def asymmetric_rows(self) -> list[int]:
        return [m for m in self.rows if m > 0 and self.row(m) != self.row(-m)]


def _one_minus_power(power: int, max_n: int) -> QSeries:
    return QSeries.constant(1, max_n) - QSeries.monomial(1, power, max_n)


def fmk_from_kernel(kernel: RankTable, k: int) -> FmkTable:
    one_minus_q = _one_minus_power(1, kernel.max_n)
    rows = {m: kernel.row(m) * one_minus_q for m in range(-kernel.max_n, kernel.max_n + 1)}
    return FmkTable(k=k, trunc_order=kernel.max_n, rows=rows)


def fmk_by_definition(k: int, max_n: int) -> FmkTable:
    """f_(m,k)(q) read off (1 - q) / ((zq;q)_k (q/z;q)_k)"""
    return fmk_from_kernel(expand_rank_kernel(k, 1, max_n), k)


def fmk_tables_by_definition(k_max: int, max_n: int) -> list[FmkTable]:
    return [
        fmk_from_kernel(kernel, k) for k, kernel in enumerate(iter_rank_kernels(1, max_n, k_max=k_max))
    ]


def fmk_by_recurrence(base: FmkTable, max_n: int | None = None) -> FmkTable:
    """
    Moves one level up with

        f_(m,k+1) = sum_n f_(n,k) q^((k+1)|m - n|) / (1 - q^(2k+2))

    The sum only runs over |n| <= max_n, as the rows beyond start above q^max_n.
    """
    order = base.trunc_order if max_n is None else max_n
    if order > base.trunc_order:
        raise ValueError(f'The base level only reaches q^{base.trunc_order}, can not produce order {order}')

    step = base.k + 1
    geometric = QSeries.geometric(2 * step, order)
    sources = {
        n: series.truncate(order)
        for n, series in base.rows.items()
        if abs(n) <= order and series.lowest_order() is not None
    }

    rows = {}
    for m in range(-order, order + 1):
        total = QSeries.zero(order)
        for n, series in sources.items():
            shift = step * abs(m - n)
            if shift <= order:
                total = total + series.shift(shift)
        rows[m] = total * geometric

    logger.debug(f'Built f_(m,k) for k={step} by recurrence at order {order}')
    return FmkTable(k=step, trunc_order=order, rows=rows)


def fmk_tables_by_recurrence(k_max: int, max_n: int) -> list[FmkTable]:
    tables = [fmk_by_definition(0, max_n)]
    for _ in range(k_max):
        tables.append(fmk_by_recurrence(tables[-1]))
    return tables


def fmk_closed_form(m: int, k: int, max_n: int) -> QSeries:
    """The known rational expressions of f_(m,k)(q) for k <= 2, expanded up to q^max_n"""
    if k < 0:
        raise ValueError(f'k needs to be nonnegative, got {k}')
    if k > 2:
        raise UnsupportedLevel(k)

    size = abs(m)
    if k == 0:
        return _one_minus_power(1, max_n) if m == 0 else QSeries.zero(max_n)

    if k == 1:
        return QSeries.geometric(1, max_n, sign=-1).shift(size)

    over_3_4 = QSeries.geometric(3, max_n) * QSeries.geometric(4, max_n)
    if m == 0:
        return (
            -QSeries.monomial(1, 1, max_n)
            + QSeries.geometric(3, max_n)
            + QSeries.geometric(4, max_n).shift(2)
            + over_3_4.shift(8)
        )

    over_2_3 = QSeries.geometric(2, max_n) * QSeries.geometric(3, max_n)
    inner = _one_minus_power(size + 1, max_n) * over_2_3 + over_3_4.shift(size + 3)
    return inner.shift(size)


def row_first_difference(table: RankTable, m: int) -> QSeries:
    """sum_n (c(m, n) - c(m, n - 1)) q^n, with c(m, -1) = 0"""
    return table.row(m) * _one_minus_power(1, table.max_n)


def first_difference_series(
    statistic: RankStatistic,
    m: int,
    max_n: int,
    fmk_tables: Sequence[FmkTable] | None = None,
) -> QSeries:
    """
    The first differences in n of the rank counts with rank m, written through f_(m,k):

        d_rank:  sum_k (-1;q)_k q^(k(k+1)/2) f_(m,k)(q)
        m2_rank: [m = 0](1 - q) + 2 sum_(k>=1) (-q^2;q)_(2k-2) q^k f_(m,k)(q^2)
        dyson:   sum_k q^(k^2) f_(m,k)(q)

    The n = 0 coefficient is the rank count at n = 0 itself.
    """
    if abs(m) > max_n:
        raise IndexOutOfRange(f'|m|={abs(m)} is above the truncation order {max_n}')

    k_max = last_summand(statistic, max_n)
    if fmk_tables is None:
        fmk_tables = fmk_tables_by_definition(k_max, max_n)
    if len(fmk_tables) <= k_max:
        raise ValueError(f'Expected f_(m,k) tables up to k={k_max}, got {len(fmk_tables) - 1}')

    if statistic == 'm2_rank':
        total = _one_minus_power(1, max_n) if m == 0 else QSeries.zero(max_n)
        for k in range(1, k_max + 1):
            weight = finite_pochhammer(-1, 2, 1, 2 * k - 2, max_n).shift(k)
            fmk = fmk_tables[k].row(m).substitute_power(2, trunc_order=max_n)
            total = total + (weight * fmk).scale(2)
        return total

    total = QSeries.zero(max_n)
    for k in range(k_max + 1):
        total = total + summand_weight(statistic, k, max_n) * fmk_tables[k].row(m).truncate(max_n)
    return total
