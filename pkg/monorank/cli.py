import asyncio
import logging
import sys
from collections.abc import Callable
from functools import wraps
from typing import Any

import click

from monorank.checks import DEFAULT_MAX_N
from monorank.exceptions import NoConsistentConvention
from monorank.schemas.report import OutputRecord, VerificationReport
from monorank.schemas.statistic import statistic_from_cli

logger = logging.getLogger(__name__)

DEFAULT_FMK_TRUNC = 20

USAGE_ERRORS = (ValueError, IndexError, OSError)


def coro(func: Callable) -> Callable:
    @wraps(func)
    def wrapper(*args, **kwargs: Any) -> Any:
        return asyncio.run(func(*args, **kwargs))

    return wrapper


def setup_logger(verbose: bool = False) -> None:
    from logging.config import dictConfig

    log_format = '%(levelname)s:\t\b%(asctime)s %(name)s:%(lineno)d %(message)s'
    configs = {
        'version': 1,
        'disable_existing_loggers': False,
        'filters': {},
        'formatters': {
            'console': {'class': 'logging.Formatter', 'datefmt': '%H:%M:%S', 'format': log_format}
        },
        'handlers': {
            'console': {
                'class': 'logging.StreamHandler',
                'filters': [],
                'formatter': 'console',
                'stream': 'ext://sys.stderr',
            }
        },
        'loggers': {
            '': {'handlers': ['console'], 'level': 'DEBUG' if verbose else 'WARNING', 'propagate': True},
        },
    }
    dictConfig(configs)


def write_output(output: str, out: str | None) -> None:
    if out:
        with open(out, 'w', encoding='utf-8', newline='\n') as file:
            file.write(output)
    else:
        click.echo(output, nl=False)


def fail(error: Exception, exit_code: int = 2) -> None:
    click.echo(f'Error: {error}', err=True)
    sys.exit(exit_code)


@click.group()
@click.option('--verbose', is_flag=True, default=False, help='Log every step to stderr')
def cli(verbose: bool) -> None:
    setup_logger(verbose)


@cli.command('table')
@click.option(
    '--statistic',
    type=click.Choice(['dyson', 'd-rank', 'm2-rank']),
    required=True,
    help='The rank statistic to count by',
)
@click.option(
    '--method',
    type=click.Choice(['gf', 'enumerate']),
    default='gf',
    help='Expand the generating function, or count the objects one by one',
)
@click.option('--max-n', type=click.IntRange(min=0), default=DEFAULT_MAX_N, help='The largest size n')
@click.option('--format', 'output_format', type=click.Choice(['csv', 'json']), default='csv')
@click.option('--out', default=None, help='Write to this path instead of stdout')
@click.option(
    '--m2-convention',
    type=click.Choice(['auto', 'floor', 'ceiling']),
    default='auto',
    help='How half of the largest part is rounded in the M2-rank',
)
def table_command(
    statistic: str, method: str, max_n: int, output_format: str, out: str | None, m2_convention: str
) -> None:
    """
    Writes the nonzero counts c(m, n) of a rank table, sorted by n and then m.
    """
    from monorank.store import RankTableStore

    selected = statistic_from_cli(statistic)
    store = RankTableStore(max_n, m2_convention)  # type: ignore

    parameters: dict[str, Any] = {'statistic': selected, 'method': method, 'max_n': max_n}
    try:
        if selected == 'm2_rank':
            parameters['m2_convention'] = store.resolve_convention()

        if method == 'gf':
            table = store.gf_table(selected)
        else:
            table = store.oracle_table(selected)

        if output_format == 'csv':
            output = table.to_polars().write_csv()
        else:
            results = [{'m': m, 'n': n, 'count': count} for m, n, count in table.nonzero_items()]
            output = OutputRecord.for_command('table', parameters, results).to_canonical_json()

        write_output(output, out)
    except NoConsistentConvention as error:
        fail(error, exit_code=1)
    except USAGE_ERRORS as error:
        fail(error)


@cli.command('fmk')
@click.option('--m', 'm', type=int, required=True)
@click.option('--k', 'k', type=click.IntRange(min=0), required=True)
@click.option('--trunc', type=click.IntRange(min=0), default=DEFAULT_FMK_TRUNC, help='The truncation order')
@click.option(
    '--method',
    type=click.Choice(['definition', 'recurrence', 'closed-form']),
    default='definition',
)
@click.option('--format', 'output_format', type=click.Choice(['text', 'csv', 'json']), default='text')
@click.option('--out', default=None, help='Write to this path instead of stdout')
def fmk_command(m: int, k: int, trunc: int, method: str, output_format: str, out: str | None) -> None:
    """
    Prints the coefficients of f_(m,k)(q) up to q^trunc.
    """
    import polars as pl

    from monorank.exceptions import IndexOutOfRange
    from monorank.rank_gf import fmk_by_definition, fmk_closed_form, fmk_tables_by_recurrence

    try:
        if abs(m) > trunc:
            raise IndexOutOfRange(f'|m|={abs(m)} is above the truncation order {trunc}')

        if method == 'definition':
            series = fmk_by_definition(k, trunc).row(m)
        elif method == 'recurrence':
            series = fmk_tables_by_recurrence(k, trunc)[k].row(m)
        else:
            series = fmk_closed_form(m, k, trunc)

        coefficients = list(series.coeffs)
        if output_format == 'text':
            output = ','.join(str(value) for value in coefficients) + '\n'
        elif output_format == 'csv':
            output = pl.DataFrame(
                {'n': list(range(trunc + 1)), 'coefficient': [str(value) for value in coefficients]}
            ).write_csv()
        else:
            parameters = {'m': m, 'k': k, 'trunc': trunc, 'method': method}
            output = OutputRecord.for_command('fmk', parameters, coefficients).to_canonical_json()

        write_output(output, out)
    except USAGE_ERRORS as error:
        fail(error)


def reports_as_csv(reports: list[VerificationReport]) -> str:
    import polars as pl

    rows: list[dict[str, Any]] = []
    for report in reports:
        if not report.violations:
            rows.append({'check_id': report.check_id, 'passed': report.passed, 'excluded': False})
        for violation in report.violations:
            rows.append(
                {
                    'check_id': report.check_id,
                    'passed': report.passed,
                    'claim': violation.claim,
                    'location': ';'.join(str(value) for value in violation.location),
                    'lhs': str(violation.lhs),
                    'rhs': str(violation.rhs),
                    'excluded': report.is_expected(violation),
                }
            )

    schema = {
        'check_id': pl.Utf8,
        'passed': pl.Boolean,
        'claim': pl.Utf8,
        'location': pl.Utf8,
        'lhs': pl.Utf8,
        'rhs': pl.Utf8,
        'excluded': pl.Boolean,
    }
    return pl.DataFrame(rows, schema=schema).write_csv()


@cli.command('verify')
@coro
@click.option(
    '--check',
    'check_name',
    type=click.Choice(
        [
            'thm-d-mono',
            'thm-m2-mono',
            'thm-m-mono',
            'cm-ordinary',
            'fmk-nonneg',
            'lemma-threshold',
            'lemma-ratio',
            'lemma-akm',
            'gf-oracle',
            'diff-identity',
            'symmetry',
            'proof-tails',
            'fmk-agree',
            'all',
        ]
    ),
    default='all',
    help='The check to run',
)
@click.option('--max-n', type=click.IntRange(min=1), default=DEFAULT_MAX_N, help='The largest size n')
@click.option(
    '--format', 'output_format', type=click.Choice(['json', 'csv', 'markdown']), default='json'
)
@click.option('--out', default=None, help='Write to this path instead of stdout')
@click.option(
    '--m2-convention',
    type=click.Choice(['auto', 'floor', 'ceiling']),
    default='auto',
    help='How half of the largest part is rounded in the M2-rank',
)
async def verify_command(
    check_name: str, max_n: int, output_format: str, out: str | None, m2_convention: str
) -> None:
    """
    Runs the verification checks and exits with 1 if any of them fails.

    A check fails when a claim is violated outside the hypothesis of the claim.
    Violations at excluded points are reported, but never fail a check.
    """
    from monorank.checks import run_checks
    from monorank.schemas.check import SupportedChecks
    from monorank.store import RankTableStore

    supported = SupportedChecks.shared()
    checks = supported.all_defaults() if check_name == 'all' else [supported.default(check_name)]
    store = RankTableStore(max_n, m2_convention)  # type: ignore

    try:
        reports = await run_checks(checks, store)
        parameters: dict[str, Any] = {
            'checks': [check.to_dict(omit_none=True) | {'name': check.name} for check in checks],
            'max_n': max_n,
            'm2_convention': store.resolve_convention(),
        }

        if output_format == 'csv':
            output = reports_as_csv(reports)
        elif output_format == 'markdown':
            output = '\n\n'.join(report.as_markdown() for report in reports) + '\n'
        else:
            results = [report.to_dict(omit_none=True) for report in reports]
            output = OutputRecord.for_command('verify', parameters, results).to_canonical_json()

        write_output(output, out)
    except NoConsistentConvention as error:
        fail(error, exit_code=1)
    except USAGE_ERRORS as error:
        fail(error)

    failed = [report.check_id for report in reports if not report.passed]
    if failed:
        logger.warning(f'Failed checks: {failed}')
        sys.exit(1)


if __name__ == '__main__':
    cli()
