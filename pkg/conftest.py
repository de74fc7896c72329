import pytest

from monorank.bivariate import RankTable
from monorank.partitions import oracle_rank_table
from monorank.rank_gf import gf_rank_table
from monorank.store import RankTableStore


@pytest.fixture
def small_store() -> RankTableStore:
    return RankTableStore(max_n=12)


@pytest.fixture
def d_rank_gf_table() -> RankTable:
    return gf_rank_table('d_rank', 12)


@pytest.fixture
def d_rank_oracle_table() -> RankTable:
    return oracle_rank_table('d_rank', 12)


@pytest.fixture
def m2_rank_gf_table() -> RankTable:
    return gf_rank_table('m2_rank', 12)


@pytest.fixture
def dyson_gf_table() -> RankTable:
    return gf_rank_table('dyson', 12)
