"""
Exact half-integers stored as twice their value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

Number = Union["HalfInt", int]


def _twice(other: object) -> int:
    if isinstance(other, HalfInt):
        return other.twice_value
    if isinstance(other, int) and not isinstance(other, bool):
        return 2 * other
    if isinstance(other, Fraction) and (2 * other).denominator == 1:
        return int(2 * other)
    raise TypeError(f"Cannot combine HalfInt with {other!r}")


@total_ordering
@dataclass(frozen=True, eq=False)
class HalfInt:
    twice_value: int

    @classmethod
    def from_int(cls, value: int) -> "HalfInt":
        return cls(2 * value)

    @classmethod
    def halves(cls, count: int) -> "HalfInt":
        """``count`` halves, i.e. count/2."""
        return cls(count)

    def __add__(self, other: Number) -> "HalfInt":
        return HalfInt(self.twice_value + _twice(other))

    __radd__ = __add__

    def __sub__(self, other: Number) -> "HalfInt":
        return HalfInt(self.twice_value - _twice(other))

    def __rsub__(self, other: Number) -> "HalfInt":
        return HalfInt(_twice(other) - self.twice_value)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    def __mul__(self, factor: int) -> "HalfInt":
        if not isinstance(factor, int):
            return NotImplemented
        return HalfInt(self.twice_value * factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        try:
            return self.twice_value == _twice(other)
        except TypeError:
            return NotImplemented

    def __lt__(self, other: Number) -> bool:
        return self.twice_value < _twice(other)

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


ZERO = HalfInt(0)
