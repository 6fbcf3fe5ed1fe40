"""Exact weights in the ambient lattice.

Coordinates are rationals with denominator dividing 2.  They are stored
doubled, as plain integer tuples, so that hashing and addition stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction, str]


def _double(x: Number) -> int:
    q = Fraction(x)
    twice = 2 * q
    if twice.denominator != 1:
        raise ValueError(f"coordinate {x} does not have denominator dividing 2")
    return twice.numerator


@dataclass(frozen=True, order=True)
class Weight:
    """A weight, stored as twice its ambient coordinates."""

    twice: tuple[int, ...]

    @classmethod
    def of(cls, coords: Iterable[Number]) -> Weight:
        return cls(tuple(_double(x) for x in coords))

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank)

    @classmethod
    def parse(cls, text: str) -> Weight:
        """Parse ``"1,-1/2,0"``; a ``|`` may separate the two blocks."""
        parts = [s.strip() for s in text.replace("|", ",").split(",")]
        parts = [s for s in parts if s]
        if not parts:
            raise ValueError("empty weight")
        return cls.of(parts)

    @property
    def rank(self) -> int:
        return len(self.twice)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.twice)

    def is_zero(self) -> bool:
        return not any(self.twice)

    def _check(self, other: Weight) -> None:
        if len(other.twice) != len(self.twice):
            raise ValueError(f"rank mismatch: {len(self.twice)} vs {len(other.twice)}")

    def __add__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.twice, other.twice)))

    def __sub__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.twice, other.twice)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.twice))

    def __mul__(self, k: Number) -> Weight:
        q = Fraction(k)
        return Weight.of(q * Fraction(a, 2) for a in self.twice)

    __rmul__ = __mul__

    def halved(self) -> Weight:
        return self * Fraction(1, 2)

    def strings(self) -> list[str]:
        return [str(x) for x in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.strings()) + ")"

    def __repr__(self) -> str:
        return f"Weight{self}"


def weight_sum(weights: Iterable[Weight], rank: int) -> Weight:
    acc = [0] * rank
    for w in weights:
        for i, a in enumerate(w.twice):
            acc[i] += a
    return Weight(tuple(acc))
