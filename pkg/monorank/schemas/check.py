from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from mashumaro.types import SerializableType

from monorank import checks
from monorank.schemas.codable import Codable
from monorank.schemas.statistic import ALL_STATISTICS, OVERPARTITION_STATISTICS, RankStatistic

if TYPE_CHECKING:
    from monorank.schemas.report import VerificationReport
    from monorank.store import RankTableStore


class Check(Codable, SerializableType):
    """
    A verification run with its parameters.
    The truncation order and the M2-rank convention come from the store it runs on.
    """

    name: str

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        raise NotImplementedError(type(self))

    def _serialize(self) -> dict:
        assert self.name in SupportedChecks.shared().types, f'Check {self.name} is not supported'
        data = self.to_dict()
        data['name'] = self.name
        return data

    @classmethod
    def _deserialize(cls, value: dict) -> Check:
        value = dict(value)
        name_type = value.pop('name')
        data_class = SupportedChecks.shared().types[name_type]
        return data_class.from_dict(value)


class SupportedChecks:

    types: dict[str, type[Check]]

    _shared: SupportedChecks | None = None

    def __init__(self) -> None:
        self.types = {}

        for check_type in [
            NMonotoneD,
            NMonotoneM2,
            MMonotone,
            OrdinaryRank,
            FmkNonnegative,
            LemmaThreshold,
            LemmaRatio,
            AkmLemma,
            GfOracle,
            DiffIdentity,
            RankSymmetry,
            ProofTails,
            FmkAgreement,
        ]:
            self.add(check_type)

    def add(self, check: type[Check]) -> None:
        self.types[check.name] = check

    def default(self, name: str) -> Check:
        if name not in self.types:
            raise ValueError(f'Unknown check {name}. Supported checks: {list(self.types)}')
        return self.types[name]()

    def all_defaults(self) -> list[Check]:
        return [check_type() for check_type in self.types.values()]

    @classmethod
    def shared(cls) -> SupportedChecks:
        if cls._shared:
            return cls._shared
        cls._shared = SupportedChecks()
        return cls._shared


@dataclass
class NMonotoneD(Check):
    include_negative: bool = False

    name = 'thm-d-mono'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_thm_n_monotone_d(store.max_n, self.include_negative, store=store)]


@dataclass
class NMonotoneM2(Check):
    include_negative: bool = False

    name = 'thm-m2-mono'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_thm_n_monotone_m2(store.max_n, self.include_negative, store=store)]


@dataclass
class MMonotone(Check):
    statistics: list[RankStatistic] = field(default_factory=lambda: list(OVERPARTITION_STATISTICS))

    name = 'thm-m-mono'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [
            checks.check_thm_m_monotone(statistic, store.max_n, store=store) for statistic in self.statistics
        ]


@dataclass
class OrdinaryRank(Check):
    name = 'cm-ordinary'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_cm_ordinary(store.max_n, store=store)]


@dataclass
class FmkNonnegative(Check):
    k_min: int = checks.DEFAULT_FMK_K_MIN
    k_max: int = checks.DEFAULT_FMK_K_MAX

    name = 'fmk-nonneg'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_fmk_nonneg(store.max_n, self.k_min, self.k_max, store=store)]


@dataclass
class LemmaThreshold(Check):
    a_max: int = checks.DEFAULT_THRESHOLD_A_MAX
    b_max: int = checks.DEFAULT_THRESHOLD_B_MAX
    c_max: int = checks.DEFAULT_THRESHOLD_C_MAX
    dilation: int = 1
    trunc_order: int | None = None

    name = 'lemma-threshold'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        order = self.trunc_order or store.max_n
        return [checks.check_lemma_threshold(order, self.a_max, self.b_max, self.c_max, self.dilation)]


@dataclass
class LemmaRatio(Check):
    m_max: int = checks.DEFAULT_RATIO_M_MAX
    trunc_order: int | None = None

    name = 'lemma-ratio'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_lemma_ratio(self.trunc_order or store.max_n, self.m_max)]


@dataclass
class AkmLemma(Check):
    k_max: int = checks.DEFAULT_K_MAX

    name = 'lemma-akm'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_akm_lemma(store.max_n, self.k_max, store=store)]


@dataclass
class GfOracle(Check):
    statistics: list[RankStatistic] = field(default_factory=lambda: list(ALL_STATISTICS))

    name = 'gf-oracle'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [
            checks.check_gf_vs_oracle(statistic, store.max_n, store.m2_convention, store=store)
            for statistic in self.statistics
        ]


@dataclass
class DiffIdentity(Check):
    m_max: int = checks.DEFAULT_DIFF_M_MAX
    statistics: list[RankStatistic] = field(default_factory=lambda: list(ALL_STATISTICS))

    name = 'diff-identity'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [
            checks.check_diff_identity(statistic, store.max_n, self.m_max, store=store)
            for statistic in self.statistics
        ]


@dataclass
class RankSymmetry(Check):
    statistics: list[RankStatistic] = field(default_factory=lambda: list(ALL_STATISTICS))

    name = 'symmetry'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [
            checks.check_rank_symmetry(statistic, store.max_n, store=store) for statistic in self.statistics
        ]


@dataclass
class ProofTails(Check):
    name = 'proof-tails'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_proof_tails(store.max_n, store=store)]


@dataclass
class FmkAgreement(Check):
    k_max: int = checks.DEFAULT_K_MAX

    name = 'fmk-agree'

    def run(self, store: RankTableStore) -> list[VerificationReport]:
        return [checks.check_fmk_agreement(store.max_n, self.k_max, store=store)]
