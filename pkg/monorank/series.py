from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from monorank.exceptions import NonUnitConstantTerm


def _check_order(trunc_order: int) -> None:
    if trunc_order < 0:
        raise ValueError(f'The truncation order needs to be nonnegative, got {trunc_order}')


@dataclass(frozen=True, slots=True)
class QSeries:
    """
    A truncated power series in q with exact integer coefficients.

    `coeffs[i]` is the coefficient of q^i for 0 <= i <= trunc_order.
    Binary operations truncate at the smaller of the two orders, so a caller that needs
    order T has to build every operand at order T or more.

    ```python
    series = QSeries.geometric(1, trunc_order=4)
    >>> QSeries(coeffs=(1, 1, 1, 1, 1), trunc_order=4)

    (QSeries.from_coefficients([1, -1], 4) * series).coeffs
    >>> (1, 0, 0, 0, 0)
    ```
    """

    coeffs: tuple[int, ...]
    trunc_order: int

    def __post_init__(self) -> None:
        _check_order(self.trunc_order)
        if len(self.coeffs) != self.trunc_order + 1:
            raise ValueError(
                f'Expected {self.trunc_order + 1} coefficients for order {self.trunc_order}, '
                f'got {len(self.coeffs)}'
            )

    @staticmethod
    def zero(trunc_order: int) -> QSeries:
        return QSeries((0,) * (trunc_order + 1), trunc_order)

    @staticmethod
    def constant(value: int, trunc_order: int) -> QSeries:
        return QSeries.monomial(value, 0, trunc_order)

    @staticmethod
    def monomial(value: int, exponent: int, trunc_order: int) -> QSeries:
        _check_order(trunc_order)
        if exponent < 0:
            raise ValueError(f'The exponent needs to be nonnegative, got {exponent}')
        coeffs = [0] * (trunc_order + 1)
        if exponent <= trunc_order:
            coeffs[exponent] = value
        return QSeries(tuple(coeffs), trunc_order)

    @staticmethod
    def from_coefficients(values: Iterable[int], trunc_order: int) -> QSeries:
        """Pads with zeros, or drops everything above q^trunc_order."""
        _check_order(trunc_order)
        coeffs = list(values)[: trunc_order + 1]
        coeffs.extend([0] * (trunc_order + 1 - len(coeffs)))
        return QSeries(tuple(int(value) for value in coeffs), trunc_order)

    @staticmethod
    def geometric(step: int, trunc_order: int, sign: int = 1) -> QSeries:
        """The expansion of 1 / (1 - sign * q^step)"""
        if step < 1:
            raise ValueError(f'The step needs to be positive, got {step}')
        coeffs = [0] * (trunc_order + 1)
        value = 1
        for exponent in range(0, trunc_order + 1, step):
            coeffs[exponent] = value
            value *= sign
        return QSeries(tuple(coeffs), trunc_order)

    def __getitem__(self, exponent: int) -> int:
        if 0 <= exponent <= self.trunc_order:
            return self.coeffs[exponent]
        return 0

    def __add__(self, other: QSeries) -> QSeries:
        order = min(self.trunc_order, other.trunc_order)
        return QSeries(tuple(a + b for a, b in zip(self.coeffs[: order + 1], other.coeffs)), order)

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def __neg__(self) -> QSeries:
        return QSeries(tuple(-a for a in self.coeffs), self.trunc_order)

    def scale(self, factor: int) -> QSeries:
        return QSeries(tuple(factor * a for a in self.coeffs), self.trunc_order)

    def __mul__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            return self.scale(other)

        order = min(self.trunc_order, other.trunc_order)
        result = [0] * (order + 1)
        right = other.coeffs
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                b = right[j]
                if b:
                    result[i + j] += a * b
        return QSeries(tuple(result), order)

    __rmul__ = __mul__

    def inverse(self) -> QSeries:
        """
        Solves a * r = 1 coefficient by coefficient.
        Over the integers this only works when the constant term is a unit.
        """
        constant = self.coeffs[0]
        if constant not in (1, -1):
            raise NonUnitConstantTerm(constant)

        result = [0] * (self.trunc_order + 1)
        result[0] = constant
        for n in range(1, self.trunc_order + 1):
            total = sum(self.coeffs[i] * result[n - i] for i in range(1, n + 1) if self.coeffs[i])
            result[n] = -constant * total
        return QSeries(tuple(result), self.trunc_order)

    def shift(self, exponent: int) -> QSeries:
        """Multiplies by q^exponent, dropping what moves above the truncation order"""
        if exponent < 0:
            raise ValueError(f'Can only shift by a nonnegative exponent, got {exponent}')
        coeffs = ((0,) * exponent + self.coeffs)[: self.trunc_order + 1]
        return QSeries(coeffs, self.trunc_order)

    def substitute_power(self, power: int, trunc_order: int | None = None) -> QSeries:
        """Replaces q with q^power"""
        if power < 1:
            raise ValueError(f'The substituted power needs to be positive, got {power}')
        order = self.trunc_order * power
        if trunc_order is not None:
            order = min(trunc_order, order)
        coeffs = [0] * (order + 1)
        for i, a in enumerate(self.coeffs):
            if i * power > order:
                break
            coeffs[i * power] = a
        return QSeries(tuple(coeffs), order)

    def truncate(self, trunc_order: int) -> QSeries:
        if trunc_order > self.trunc_order:
            raise ValueError(f'Can not raise the truncation order from {self.trunc_order} to {trunc_order}')
        return QSeries(self.coeffs[: trunc_order + 1], trunc_order)

    def lowest_order(self) -> int | None:
        for exponent, value in enumerate(self.coeffs):
            if value:
                return exponent
        return None

    def negative_coefficients(self, start: int = 0) -> list[tuple[int, int]]:
        return [(n, self.coeffs[n]) for n in range(max(start, 0), self.trunc_order + 1) if self.coeffs[n] < 0]

    def is_nonnegative(self, start: int = 0) -> bool:
        return not self.negative_coefficients(start)


def finite_pochhammer(constant: int, exponent: int, step: int, count: int, trunc_order: int) -> QSeries:
    """
    The finite product of (1 - constant * q^(exponent + i * step)) for 0 <= i < count.

    With step=1 this is (a;q)_n for a = constant * q^exponent, and step=2 gives (a;q^2)_n.
    """
    if count < 0:
        raise ValueError(f'The number of factors needs to be nonnegative, got {count}')
    if step < 1:
        raise ValueError(f'The step needs to be positive, got {step}')
    if exponent < 0:
        raise ValueError(f'The exponent needs to be nonnegative, got {exponent}')

    coeffs = [0] * (trunc_order + 1)
    coeffs[0] = 1
    for i in range(count):
        power = exponent + i * step
        if power > trunc_order:
            break
        if power == 0:
            coeffs = [(1 - constant) * value for value in coeffs]
            continue
        # Multiplying in place from the top keeps the old lower coefficients readable
        for n in range(trunc_order, power - 1, -1):
            coeffs[n] -= constant * coeffs[n - power]
    return QSeries(tuple(coeffs), trunc_order)
