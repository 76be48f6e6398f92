"""The five-valued truth domain B4.

Values are the monotone bit vectors 1111 > 0111 > 0011 > 0001 > 0000.
Internally a value is identified with its number of ones, so the order of
the domain is the order of integers and bit ``i`` (1-based) of a value with
``n`` ones is set iff ``i >= 5 - n``.
"""
from __future__ import annotations

import enum
from typing import Iterable


class InvalidTruthValue(ValueError):
    pass


class TruthValue(enum.IntEnum):
    V0000 = 0
    V0001 = 1
    V0011 = 2
    V0111 = 3
    V1111 = 4

    def __str__(self) -> str:
        return "0" * (4 - self.value) + "1" * self.value

    def __repr__(self) -> str:
        return f"TruthValue({str(self)!r})"

    @property
    def bits(self) -> tuple[int, int, int, int]:
        return tuple(bit(self, i) for i in range(1, 5))  # type: ignore[return-value]

    @property
    def level(self) -> int:
        """The unique i with self = 0^(i-1) 1^(5-i); undefined for 0000."""
        if self.value == 0:
            raise InvalidTruthValue("0000 has no bit level")
        return 5 - self.value

    @classmethod
    def parse(cls, text: str) -> "TruthValue":
        text = text.strip()
        if len(text) != 4 or any(ch not in "01" for ch in text):
            raise InvalidTruthValue(f"not a truth value: {text!r}")
        return from_bits(*(int(ch) for ch in text))

    @classmethod
    def at_level(cls, i: int) -> "TruthValue":
        """The value 0^(i-1) 1^(5-i), i.e. the least value with bit i set."""
        if i not in (1, 2, 3, 4):
            raise ValueError(f"bit level out of range: {i}")
        return cls(5 - i)


TOP = TruthValue.V1111
BOTTOM = TruthValue.V0000
ALL_VALUES = tuple(TruthValue)
NONZERO = (TruthValue.V1111, TruthValue.V0111, TruthValue.V0011, TruthValue.V0001)


def from_bits(b1: int, b2: int, b3: int, b4: int) -> TruthValue:
    bits = (b1, b2, b3, b4)
    if any(b not in (0, 1) for b in bits):
        raise InvalidTruthValue(f"bits must be 0 or 1: {bits}")
    for i in range(3):
        if bits[i] and not bits[i + 1]:
            raise InvalidTruthValue("non-monotone bit pattern " + "".join(map(str, bits)))
    return TruthValue(sum(bits))


def bit(a: int, i: int) -> int:
    if i not in (1, 2, 3, 4):
        raise ValueError(f"bit index out of range: {i}")
    return 1 if a >= 5 - i else 0


def compare(a: TruthValue, b: TruthValue) -> int:
    """-1, 0 or 1 as a is below, equal to or above b."""
    return (a > b) - (a < b)


def meet(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(min(a, b))


def join(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(max(a, b))


def meet_all(values: Iterable[TruthValue]) -> TruthValue:
    return TruthValue(min(values, default=TOP))


def join_all(values: Iterable[TruthValue]) -> TruthValue:
    return TruthValue(max(values, default=BOTTOM))


def negate(a: TruthValue) -> TruthValue:
    return BOTTOM if a == TOP else TOP


def implies(a: TruthValue, b: TruthValue) -> TruthValue:
    return TOP if a <= b else TruthValue(b)
