from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from monorank.schemas.codable import Codable


@dataclass
class Violation(Codable):
    """A point where `lhs >= rhs` (or `lhs == rhs` for identities) was claimed and does not hold"""

    claim: str
    location: list[int]
    lhs: int
    rhs: int


@dataclass
class ExcludedPoint(Codable):
    claim: str
    location: list[int]


@dataclass
class VerificationReport(Codable):
    check_id: str
    bounds: dict[str, int]
    violations: list[Violation]
    expected_exceptions: list[ExcludedPoint]
    passed: bool
    hypothesis: str | None = None
    notes: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_violations(
        cls,
        check_id: str,
        bounds: dict[str, int],
        violations: list[Violation],
        is_excluded: Callable[[Violation], bool] | None = None,
        hypothesis: str | None = None,
        notes: dict[str, str] | None = None,
    ) -> VerificationReport:
        """
        Keeps every observed violation, and marks the ones the hypothesis rules out.
        The report passes when all violations are excluded.
        """
        excluded = [
            ExcludedPoint(claim=violation.claim, location=violation.location)
            for violation in violations
            if is_excluded is not None and is_excluded(violation)
        ]
        return cls(
            check_id=check_id,
            bounds=bounds,
            violations=violations,
            expected_exceptions=excluded,
            passed=len(excluded) == len(violations),
            hypothesis=hypothesis,
            notes=notes or {},
        )

    def is_expected(self, violation: Violation) -> bool:
        return any(
            point.claim == violation.claim and point.location == violation.location
            for point in self.expected_exceptions
        )

    @property
    def unexpected_violations(self) -> list[Violation]:
        return [violation for violation in self.violations if not self.is_expected(violation)]

    @property
    def is_ok(self) -> bool:
        return self.passed

    def as_markdown(self) -> str:
        status = 'passed' if self.passed else 'failed'
        markdown = f'Check `{self.check_id}` {status} with {len(self.violations)} violation(s).'
        if self.hypothesis:
            markdown += f'\nHypothesis: {self.hypothesis}'

        unexpected = self.unexpected_violations
        if unexpected:
            lines = '\n- '.join(
                f'`{violation.claim}` at {tuple(violation.location)}: {violation.lhs} vs {violation.rhs}'
                for violation in unexpected
            )
            markdown += f'\n\nUnexpected violations:\n- {lines}'
        return markdown


@dataclass
class OutputRecord(Codable):
    schema_version: int
    command: str
    parameters: dict[str, Any]
    results: list[Any]

    @staticmethod
    def for_command(command: str, parameters: dict[str, Any], results: list[Any]) -> OutputRecord:
        return OutputRecord(schema_version=1, command=command, parameters=parameters, results=results)
