from __future__ import annotations

import logging
import threading
from typing import Callable, Hashable, TypeVar

from monorank.bivariate import RankTable, akm_tables_by_recurrence
from monorank.exceptions import NoConsistentConvention
from monorank.partitions import oracle_rank_table
from monorank.rank_gf import FmkTable, fmk_tables_by_definition, gf_rank_table
from monorank.schemas.statistic import ALL_CONVENTIONS, ConventionChoice, M2Convention, RankStatistic

logger = logging.getLogger(__name__)

M2_PROBE_N = 10

T = TypeVar('T')


def first_consistent_convention(max_n: int) -> M2Convention:
    """The first M2-rank convention whose enumeration matches the generating function up to q^max_n"""
    expected = gf_rank_table('m2_rank', max_n)
    for convention in ALL_CONVENTIONS:
        if not oracle_rank_table('m2_rank', max_n, convention).mismatches(expected):
            return convention
    raise NoConsistentConvention(
        f'Neither of {ALL_CONVENTIONS} reproduces the M2-rank generating function up to q^{max_n}'
    )


class RankTableStore:
    """
    Builds every table at most once for a fixed truncation order.

    ```python
    store = RankTableStore(max_n=20)
    table = store.gf_table('d_rank')

    table.entry(m=0, n=4)
    >>> 2
    ```
    """

    max_n: int
    m2_convention: ConventionChoice

    def __init__(self, max_n: int, m2_convention: ConventionChoice = 'auto') -> None:
        if max_n < 0:
            raise ValueError(f'max_n needs to be nonnegative, got {max_n}')
        self.max_n = max_n
        self.m2_convention = m2_convention
        self._values: dict[Hashable, object] = {}
        self._locks: dict[Hashable, threading.Lock] = {}
        self._lock = threading.Lock()

    def _cached(self, key: Hashable, build: Callable[[], T]) -> T:
        with self._lock:
            key_lock = self._locks.setdefault(key, threading.Lock())

        with key_lock:
            if key not in self._values:
                logger.debug(f'Building {key} at order {self.max_n}')
                self._values[key] = build()
            return self._values[key]  # type: ignore

    def resolve_convention(self) -> M2Convention:
        if self.m2_convention != 'auto':
            return self.m2_convention
        return self._cached(
            'm2_convention', lambda: first_consistent_convention(min(self.max_n, M2_PROBE_N))
        )

    def gf_table(self, statistic: RankStatistic) -> RankTable:
        return self._cached(('gf', statistic), lambda: gf_rank_table(statistic, self.max_n))

    def oracle_table(self, statistic: RankStatistic, convention: M2Convention | None = None) -> RankTable:
        if statistic != 'm2_rank':
            return self._cached(('oracle', statistic), lambda: oracle_rank_table(statistic, self.max_n))

        selected = convention or self.resolve_convention()
        return self._cached(
            ('oracle', statistic, selected), lambda: oracle_rank_table(statistic, self.max_n, selected)
        )

    def fmk_tables(self, k_max: int) -> list[FmkTable]:
        """f_(m,k) by definition for 0 <= k <= k_max at the store order"""
        return self._cached(('fmk', k_max), lambda: fmk_tables_by_definition(k_max, self.max_n))

    def akm_tables(self, k_max: int) -> list[RankTable]:
        return self._cached(('akm', k_max), lambda: akm_tables_by_recurrence(k_max, self.max_n))
