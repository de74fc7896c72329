import pytest

from monorank.schemas.check import Check, FmkNonnegative, GfOracle, LemmaThreshold, SupportedChecks
from monorank.store import RankTableStore


def test_every_cli_check_is_registered() -> None:
    assert list(SupportedChecks.shared().types) == [
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
    ]


def test_unknown_check() -> None:
    with pytest.raises(ValueError):
        SupportedChecks.shared().default('thm-unknown')


def test_serialize_with_name() -> None:
    check = FmkNonnegative(k_min=2, k_max=5)

    assert check._serialize() == {'k_min': 2, 'k_max': 5, 'name': 'fmk-nonneg'}
    assert Check._deserialize({'name': 'fmk-nonneg', 'k_min': 2, 'k_max': 5}) == check


def test_deserialize_defaults() -> None:
    check = Check._deserialize({'name': 'gf-oracle'})

    assert isinstance(check, GfOracle)
    assert check.statistics == ['dyson', 'd_rank', 'm2_rank']


def test_run_uses_the_store_order() -> None:
    store = RankTableStore(24)
    [report] = LemmaThreshold(a_max=2, b_max=3, c_max=2).run(store)

    assert report.bounds == {'max_n': 24, 'a_max': 2, 'b_max': 3, 'c_max': 2, 'dilation': 1}
    assert report.passed
