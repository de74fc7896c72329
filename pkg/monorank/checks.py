from __future__ import annotations

import asyncio
import logging
from typing import TYPE_CHECKING, Callable, Sequence

from prometheus_client import Histogram

from monorank.bivariate import bkm_table, iter_rank_kernels, lift_level
from monorank.partitions import overpartition_counts, partition_counts
from monorank.rank_gf import (
    fmk_closed_form,
    fmk_tables_by_recurrence,
    first_difference_series,
    last_summand,
    row_first_difference,
)
from monorank.schemas.report import VerificationReport, Violation
from monorank.schemas.statistic import (
    ALL_CONVENTIONS,
    ConventionChoice,
    M2Convention,
    RankStatistic,
    counts_overpartitions,
)
from monorank.series import QSeries
from monorank.store import RankTableStore

if TYPE_CHECKING:
    from monorank.bivariate import RankTable
    from monorank.schemas.check import Check

logger = logging.getLogger(__name__)

check_duration = Histogram(
    'monorank_check_seconds',
    'The time used to run a verification check',
    labelnames=['check_id'],
)

DEFAULT_MAX_N = 40
DEFAULT_K_MAX = 6
DEFAULT_FMK_K_MIN = 2
DEFAULT_FMK_K_MAX = 8
DEFAULT_THRESHOLD_A_MAX = 8
DEFAULT_THRESHOLD_B_MAX = 12
DEFAULT_THRESHOLD_C_MAX = 8
DEFAULT_RATIO_M_MAX = 40
DEFAULT_DIFF_M_MAX = 10


def _store_for(
    store: RankTableStore | None, max_n: int, convention: ConventionChoice = 'auto'
) -> RankTableStore:
    if store is not None and store.max_n == max_n:
        return store
    return RankTableStore(max_n, convention if store is None else store.m2_convention)


def _negatives(claim: str, series: QSeries, location: list[int], start: int = 0) -> list[Violation]:
    return [
        Violation(claim=claim, location=location + [n], lhs=value, rhs=0)
        for n, value in series.negative_coefficients(start)
    ]


def _series_mismatches(claim: str, lhs: QSeries, rhs: QSeries, location: list[int]) -> list[Violation]:
    order = min(lhs.trunc_order, rhs.trunc_order)
    return [
        Violation(claim=claim, location=location + [n], lhs=lhs[n], rhs=rhs[n])
        for n in range(order + 1)
        if lhs[n] != rhs[n]
    ]


def _log_report(report: VerificationReport) -> VerificationReport:
    unexpected = len(report.unexpected_violations)
    logger.info(
        f'{report.check_id}: {len(report.violations)} violation(s), {unexpected} outside the hypothesis'
    )
    if unexpected:
        # A sweep should never fail outside the excluded set
        logger.warning(report.as_markdown())
    return report


def _n_monotone_violations(table: RankTable, max_n: int, include_negative: bool) -> list[Violation]:
    ms = range(-max_n, max_n + 1) if include_negative else range(0, max_n + 1)
    violations = []
    for m in ms:
        for n in range(1, max_n + 1):
            lhs, rhs = table.entry(m, n), table.entry(m, n - 1)
            if lhs < rhs:
                violations.append(Violation(claim='n-monotone', location=[m, n], lhs=lhs, rhs=rhs))
    return violations


def check_thm_n_monotone_d(
    max_n: int, include_negative: bool = False, store: RankTableStore | None = None
) -> VerificationReport:
    """N(m, n) >= N(m, n - 1) for overpartitions counted by D-rank"""
    store = _store_for(store, max_n)
    violations = _n_monotone_violations(store.gf_table('d_rank'), max_n, include_negative)

    def is_excluded(violation: Violation) -> bool:
        m, n = violation.location
        return n == abs(m) + 2 or (m, n) == (0, 4)

    return _log_report(
        VerificationReport.from_violations(
            'thm-d-mono',
            {'max_n': max_n, 'm_min': -max_n if include_negative else 0, 'm_max': max_n},
            violations,
            is_excluded,
            hypothesis='n != |m| + 2 and (m, n) != (0, 4)',
        )
    )


def check_thm_n_monotone_m2(
    max_n: int, include_negative: bool = False, store: RankTableStore | None = None
) -> VerificationReport:
    store = _store_for(store, max_n)
    violations = _n_monotone_violations(store.gf_table('m2_rank'), max_n, include_negative)
    return _log_report(
        VerificationReport.from_violations(
            'thm-m2-mono',
            {'max_n': max_n, 'm_min': -max_n if include_negative else 0, 'm_max': max_n},
            violations,
        )
    )


def _m_monotone_violations(table: RankTable, max_n: int) -> list[Violation]:
    violations = []
    for n in range(max_n + 1):
        for m in range(max_n + 1):
            lhs, rhs = table.entry(m, n), table.entry(m + 2, n)
            if lhs < rhs:
                violations.append(Violation(claim='m-monotone', location=[m, n], lhs=lhs, rhs=rhs))
    return violations


def check_thm_m_monotone(
    statistic: RankStatistic, max_n: int, store: RankTableStore | None = None
) -> VerificationReport:
    """c(m, n) >= c(m + 2, n) for all m >= 0"""
    if not counts_overpartitions(statistic):
        raise ValueError(f'The m-monotonicity check covers d_rank and m2_rank, got {statistic}')

    store = _store_for(store, max_n)
    violations = _m_monotone_violations(store.gf_table(statistic), max_n)
    return _log_report(
        VerificationReport.from_violations(
            'thm-m-mono',
            {'max_n': max_n},
            violations,
            notes={'statistic': statistic},
        )
    )


def check_cm_ordinary(max_n: int, store: RankTableStore | None = None) -> VerificationReport:
    """
    Both monotonicity claims for the Dyson rank of ordinary partitions.
    Monotonicity in n is only claimed for n >= 12 and n != m + 2.
    """
    store = _store_for(store, max_n)
    table = store.gf_table('dyson')
    violations = _n_monotone_violations(table, max_n, include_negative=False)
    violations.extend(_m_monotone_violations(table, max_n))

    def is_excluded(violation: Violation) -> bool:
        m, n = violation.location
        return violation.claim == 'n-monotone' and (n < 12 or n == m + 2)

    return _log_report(
        VerificationReport.from_violations(
            'cm-ordinary',
            {'max_n': max_n},
            violations,
            is_excluded,
            hypothesis='n-monotone only for n >= 12 and n != m + 2',
        )
    )


def check_fmk_nonneg(
    max_n: int,
    k_min: int = DEFAULT_FMK_K_MIN,
    k_max: int = DEFAULT_FMK_K_MAX,
    store: RankTableStore | None = None,
) -> VerificationReport:
    """
    For k >= 2: f_(0,k) + q - q^2, f_(1,k) - q^(k+2) and f_(m,k) for m >= 2 have no negative
    coefficients, and f_(0,k) starts with 1.
    """
    if k_min < 2:
        raise ValueError(f'The nonnegativity claims start at k=2, got k_min={k_min}')

    store = _store_for(store, max_n)
    tables = store.fmk_tables(k_max)
    q_minus_q2 = QSeries.from_coefficients([0, 1, -1], max_n)

    violations: list[Violation] = []
    for k in range(k_min, k_max + 1):
        table = tables[k]
        f0 = table.row(0)
        violations.extend(_negatives('f0-plus-q-minus-q2', f0 + q_minus_q2, [0, k]))
        if f0[0] != 1:
            violations.append(Violation(claim='f0-constant-term', location=[0, k], lhs=f0[0], rhs=1))

        violations.extend(
            _negatives('f1-minus-qk2', table.row(1) - QSeries.monomial(1, k + 2, max_n), [1, k])
        )
        for m in range(2, max_n + 1):
            violations.extend(_negatives('fm-nonneg', table.row(m), [m, k]))

    return _log_report(
        VerificationReport.from_violations(
            'fmk-nonneg', {'max_n': max_n, 'k_min': k_min, 'k_max': k_max}, violations
        )
    )


def threshold_series(a: int, b: int, c: int, max_n: int, dilation: int = 1) -> QSeries:
    """q^a / (1 + q^c) + q^b / ((1 - q^3)(1 - q^4)), with q replaced by q^dilation"""
    series = QSeries.geometric(c, max_n, sign=-1).shift(a) + (
        QSeries.geometric(3, max_n) * QSeries.geometric(4, max_n)
    ).shift(b)
    if dilation == 1:
        return series
    return series.substitute_power(dilation, trunc_order=max_n)


def check_lemma_threshold(
    max_n: int,
    a_max: int = DEFAULT_THRESHOLD_A_MAX,
    b_max: int = DEFAULT_THRESHOLD_B_MAX,
    c_max: int = DEFAULT_THRESHOLD_C_MAX,
    dilation: int = 1,
) -> VerificationReport:
    """
    The threshold series has no negative coefficient from q^(b+6) on.
    Negative coefficients below the threshold are reported as expected.
    """
    if dilation < 1:
        raise ValueError(f'The dilation needs to be positive, got {dilation}')
    if max_n < dilation * (b_max + 6):
        logger.warning(f'max_n={max_n} does not reach the threshold of b={b_max}, the check is partial')

    violations: list[Violation] = []
    for a in range(a_max + 1):
        for b in range(b_max + 1):
            for c in range(1, c_max + 1):
                violations.extend(
                    _negatives('threshold', threshold_series(a, b, c, max_n, dilation), [a, b, c])
                )

    def is_excluded(violation: Violation) -> bool:
        _, b, _, n = violation.location
        return n < dilation * (b + 6)

    return _log_report(
        VerificationReport.from_violations(
            'lemma-threshold',
            {'max_n': max_n, 'a_max': a_max, 'b_max': b_max, 'c_max': c_max, 'dilation': dilation},
            violations,
            is_excluded,
            hypothesis=f'n >= {dilation} * (b + 6)' if dilation > 1 else 'n >= b + 6',
        )
    )


def ratio_series(m: int, max_n: int) -> QSeries:
    """(1 - q^(m+1)) / ((1 - q^2)(1 - q^3))"""
    numerator = QSeries.constant(1, max_n) - QSeries.monomial(1, m + 1, max_n)
    return numerator * QSeries.geometric(2, max_n) * QSeries.geometric(3, max_n)


def check_lemma_ratio(max_n: int, m_max: int = DEFAULT_RATIO_M_MAX) -> VerificationReport:
    violations: list[Violation] = []
    for m in range(1, m_max + 1):
        violations.extend(_negatives('ratio-nonneg', ratio_series(m, max_n), [m]))

    return _log_report(
        VerificationReport.from_violations('lemma-ratio', {'max_n': max_n, 'm_max': m_max}, violations)
    )


def check_akm_lemma(
    max_n: int, k_max: int = DEFAULT_K_MAX, store: RankTableStore | None = None
) -> VerificationReport:
    """
    a_(k,m)(n) by recurrence equals the kernel expansion, a is symmetric in m,
    and b = a_(k,m) - a_(k,m+2) is nonnegative for m >= 0, antisymmetric around m = -1
    and follows the same recurrence as a.
    """
    store = _store_for(store, max_n)
    by_recurrence = store.akm_tables(k_max)
    kernels = list(iter_rank_kernels(1, max_n, k_max=k_max))
    b_tables = [bkm_table(k, max_n, a_table=kernel) for k, kernel in enumerate(kernels)]

    violations: list[Violation] = []
    for k, (kernel, b_table) in enumerate(zip(kernels, b_tables)):
        for m, n, ours, theirs in by_recurrence[k].mismatches(kernel):
            violations.append(Violation(claim='a-recurrence', location=[k, m, n], lhs=ours, rhs=theirs))

        for n in range(max_n + 1):
            for m in range(1, max_n + 1):
                value, mirrored = kernel.entry(m, n), kernel.entry(-m, n)
                if value != mirrored:
                    violations.append(
                        Violation(claim='a-symmetric', location=[k, m, n], lhs=value, rhs=mirrored)
                    )

            for m in range(0, max_n + 1):
                value = b_table.entry(m, n)
                if value < 0:
                    violations.append(Violation(claim='b-nonneg', location=[k, m, n], lhs=value, rhs=0))

            for m in range(b_table.m_min, b_table.m_max + 1):
                value, opposite = b_table.entry(m, n), -b_table.entry(-m - 2, n)
                if value != opposite:
                    violations.append(
                        Violation(claim='b-antisymmetric', location=[k, m, n], lhs=value, rhs=opposite)
                    )

        if k < k_max:
            lifted = lift_level(b_table, k)
            for m, n, ours, theirs in lifted.mismatches(b_tables[k + 1]):
                violations.append(
                    Violation(claim='b-recurrence', location=[k + 1, m, n], lhs=ours, rhs=theirs)
                )

    return _log_report(
        VerificationReport.from_violations('lemma-akm', {'max_n': max_n, 'k_max': k_max}, violations)
    )


def _row_sum_violations(table: RankTable, expected: QSeries, source: str) -> list[Violation]:
    return [
        Violation(claim=f'row-sums[{source}]', location=[n], lhs=total, rhs=expected[n])
        for n, total in enumerate(table.row_sums())
        if total != expected[n]
    ]


def _table_mismatches(claim: str, gf_table: RankTable, oracle: RankTable) -> list[Violation]:
    return [
        Violation(claim=claim, location=[m, n], lhs=ours, rhs=theirs)
        for m, n, ours, theirs in gf_table.mismatches(oracle)
    ]


def check_gf_vs_oracle(
    statistic: RankStatistic,
    max_n: int,
    convention: ConventionChoice = 'auto',
    store: RankTableStore | None = None,
) -> VerificationReport:
    """
    The generating function table equals the table counted by enumeration.

    For m2_rank with `auto`, every convention is compared and exactly one has to match.
    The first mismatch of a rejected convention is reported as expected.
    """
    store = _store_for(store, max_n, convention)
    gf_table = store.gf_table(statistic)
    if counts_overpartitions(statistic):
        expected_sums = overpartition_counts(max_n)
    else:
        expected_sums = partition_counts(max_n)

    notes: dict[str, str] = {'statistic': statistic}
    violations: list[Violation] = []
    excluded: list[Violation] = []

    if statistic == 'm2_rank' and convention == 'auto':
        matching: list[M2Convention] = []
        for candidate in ALL_CONVENTIONS:
            candidate_oracle = store.oracle_table(statistic, candidate)
            found = _table_mismatches(f'gf-equals-oracle[{candidate}]', gf_table, candidate_oracle)
            notes[f'{candidate}_mismatches'] = str(len(found))
            if found:
                violations.append(found[0])
                excluded.append(found[0])
            else:
                matching.append(candidate)

        if len(matching) != 1:
            violations.append(Violation(claim='unique-convention', location=[], lhs=len(matching), rhs=1))
            excluded = []
        selected = matching[0] if matching else store.resolve_convention()
        notes['m2_convention'] = selected
        oracle = store.oracle_table(statistic, selected)
    else:
        if statistic == 'm2_rank':
            selected = store.resolve_convention() if convention == 'auto' else convention
            notes['m2_convention'] = selected
            oracle = store.oracle_table(statistic, selected)
        else:
            oracle = store.oracle_table(statistic)
        violations.extend(_table_mismatches('gf-equals-oracle', gf_table, oracle))

    violations.extend(_row_sum_violations(gf_table, expected_sums, 'gf'))
    violations.extend(_row_sum_violations(oracle, expected_sums, 'enumerate'))

    return _log_report(
        VerificationReport.from_violations(
            'gf-oracle',
            {'max_n': max_n},
            violations,
            lambda violation: any(violation is point for point in excluded),
            hypothesis='a rejected M2-rank convention may disagree' if excluded else None,
            notes=notes,
        )
    )


def check_diff_identity(
    statistic: RankStatistic,
    max_n: int,
    m_max: int = DEFAULT_DIFF_M_MAX,
    store: RankTableStore | None = None,
) -> VerificationReport:
    """The f_(m,k) form of the first differences equals the difference of the table rows"""
    store = _store_for(store, max_n)
    table = store.gf_table(statistic)
    fmk_tables = store.fmk_tables(last_summand(statistic, max_n))
    bound = min(m_max, max_n)

    violations: list[Violation] = []
    for m in range(-bound, bound + 1):
        lhs = first_difference_series(statistic, m, max_n, fmk_tables=fmk_tables)
        violations.extend(_series_mismatches('first-difference', lhs, row_first_difference(table, m), [m]))

    return _log_report(
        VerificationReport.from_violations(
            'diff-identity',
            {'max_n': max_n, 'm_max': bound},
            violations,
            notes={'statistic': statistic},
        )
    )


def check_rank_symmetry(
    statistic: RankStatistic, max_n: int, store: RankTableStore | None = None
) -> VerificationReport:
    """c(m, n) = c(-m, n) on the generating function and on the enumerated table"""
    store = _store_for(store, max_n)
    violations = []
    for source, table in [('gf', store.gf_table(statistic)), ('enumerate', store.oracle_table(statistic))]:
        for m, n, value, mirrored in table.asymmetries():
            violations.append(
                Violation(claim=f'symmetric[{source}]', location=[m, n], lhs=value, rhs=mirrored)
            )

    notes = {'statistic': statistic}
    if statistic == 'm2_rank':
        notes['m2_convention'] = store.resolve_convention()
    return _log_report(
        VerificationReport.from_violations('symmetry', {'max_n': max_n}, violations, notes=notes)
    )


def _rational_tail(
    numerator_shift: int, alternating_step: int, tail_shift: int, tail_steps: tuple[int, int], max_n: int
) -> QSeries:
    """2 q^numerator_shift / (1 + q^alternating_step) + 2 q^tail_shift / ((1 - q^i)(1 - q^j))"""
    first, second = tail_steps
    alternating = QSeries.geometric(alternating_step, max_n, sign=-1).shift(numerator_shift)
    tail = (QSeries.geometric(first, max_n) * QSeries.geometric(second, max_n)).shift(tail_shift)
    return (alternating + tail).scale(2)


def general_d_rank_tail(m: int, max_n: int) -> QSeries:
    """
    2 q^(m+1) / (1 + q)
        + 2 (1 + q) q^(m+3) ((1 - q^(m+1)) / ((1 - q^2)(1 - q^3)) + q^(m+3) / ((1 - q^3)(1 - q^4)))
    """
    alternating = QSeries.geometric(1, max_n, sign=-1).shift(m + 1)
    inner = ratio_series(m, max_n) + (QSeries.geometric(3, max_n) * QSeries.geometric(4, max_n)).shift(m + 3)
    one_plus_q = QSeries.from_coefficients([1, 1], max_n)
    return (alternating + (one_plus_q * inner).shift(m + 3)).scale(2)


TAIL_CASES: list[tuple[str, tuple[int, int, int, tuple[int, int]], int]] = [
    ('d-rank m=0', (1, 1, 11, (3, 4)), 17),
    ('d-rank m=1', (2, 1, 4, (3, 4)), 10),
    ('d-rank m=3', (4, 1, 12, (3, 4)), 18),
    ('m2-rank m=0', (1, 2, 21, (6, 8)), 33),
    ('m2-rank m=1', (3, 2, 13, (3, 4)), 19),
]
"""The closing series of each special case, and where it becomes nonnegative"""

HAND_CHECKED_WINDOWS: list[tuple[RankStatistic, int, range, set[int]]] = [
    ('d_rank', 0, range(1, 17), {2, 4}),
    ('d_rank', 1, range(4, 10), set()),
    ('d_rank', 3, range(6, 18), set()),
    ('m2_rank', 0, range(1, 33), set()),
    ('m2_rank', 1, range(1, 19), set()),
]
"""Rows where the small n were settled by looking at the counts directly, minus the known exceptions"""


def check_proof_tails(max_n: int, store: RankTableStore | None = None) -> VerificationReport:
    """
    The final nonnegativity claims of the monotonicity argument, together with the
    finite windows that were checked on the counts directly.
    The general D-rank tail does not cover m = 1 and m = 3, which have their own cases.
    """
    store = _store_for(store, max_n)
    violations: list[Violation] = []

    for claim, (numerator_shift, alternating_step, tail_shift, tail_steps), start in TAIL_CASES:
        series = _rational_tail(numerator_shift, alternating_step, tail_shift, tail_steps, max_n)
        violations.extend(_negatives(claim, series, [], start))

    for m in range(1, max_n - 2):
        violations.extend(_negatives('d-rank general tail', general_d_rank_tail(m, max_n), [m], m + 3))

    for statistic, m, window, skipped in HAND_CHECKED_WINDOWS:
        table = store.gf_table(statistic)
        for n in window:
            if n > max_n or n in skipped:
                continue
            lhs, rhs = table.entry(m, n), table.entry(m, n - 1)
            if lhs < rhs:
                violations.append(Violation(claim=f'window[{statistic}]', location=[m, n], lhs=lhs, rhs=rhs))

    def is_excluded(violation: Violation) -> bool:
        return violation.claim == 'd-rank general tail' and violation.location[0] in (1, 3)

    return _log_report(
        VerificationReport.from_violations(
            'proof-tails',
            {'max_n': max_n},
            violations,
            is_excluded,
            hypothesis='the general D-rank tail needs m >= 2 and m != 3',
        )
    )


def check_fmk_agreement(
    max_n: int, k_max: int = DEFAULT_K_MAX, store: RankTableStore | None = None
) -> VerificationReport:
    """f_(m,k) by definition equals the recurrence for k <= k_max, and the closed forms for k <= 2"""
    store = _store_for(store, max_n)
    by_definition = store.fmk_tables(k_max)
    by_recurrence = fmk_tables_by_recurrence(k_max, max_n)

    violations: list[Violation] = []
    for k in range(k_max + 1):
        for m in range(-max_n, max_n + 1):
            expected = by_definition[k].row(m)
            violations.extend(
                _series_mismatches('definition-equals-recurrence', expected, by_recurrence[k].row(m), [m, k])
            )
            if k <= 2:
                violations.extend(
                    _series_mismatches(
                        'definition-equals-closed-form', expected, fmk_closed_form(m, k, max_n), [m, k]
                    )
                )

    return _log_report(
        VerificationReport.from_violations('fmk-agree', {'max_n': max_n, 'k_max': k_max}, violations)
    )


def _timed(check: Check, store: RankTableStore) -> Callable[[], list[VerificationReport]]:
    def run() -> list[VerificationReport]:
        logger.info(f'Running {check.name} at order {store.max_n}')
        with check_duration.labels(check.name).time():
            return check.run(store)

    return run


async def run_checks(checks: Sequence[Check], store: RankTableStore) -> list[VerificationReport]:
    """
    Runs independent checks concurrently over one shared store.
    The reports keep the order of `checks`.
    """
    results = await asyncio.gather(*[asyncio.to_thread(_timed(check, store)) for check in checks])
    return [report for reports in results for report in reports]
