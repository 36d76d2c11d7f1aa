from fractions import Fraction

from pydantic import ConfigDict, NonNegativeInt, PositiveInt, model_validator
from pydantic.dataclasses import dataclass

from qpf_rdm.exceptions import DomainArgumentError


@dataclass(frozen=True)
class Domain:
    """
    Problem size: n qubits spanning the integers [0, N) with N = 2^n
    Bit l of an integer is qubit l, qubit n-1 being the most significant
    """

    n: PositiveInt

    @property
    def N(self) -> int:
        return 1 << self.n

    def check_qubit(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise DomainArgumentError(f"qubit {q} outside [0, {self.n})")

    def check_period(self, r: int) -> None:
        if not 1 <= r < self.N:
            raise DomainArgumentError(f"period {r} outside [1, {self.N})")

    def check_value(self, x: int) -> None:
        if not 0 <= x < self.N:
            raise DomainArgumentError(f"value {x} outside [0, {self.N})")


@dataclass(frozen=True)
class BitString:
    value: NonNegativeInt
    n: PositiveInt

    @model_validator(mode="after")
    def check_width(self):
        if self.value >= 1 << self.n:
            raise ValueError(f"{self.value} does not fit in {self.n} bits")
        return self

    def bit(self, l: int) -> int:
        return (self.value >> l) & 1

    @property
    def bits(self) -> list[int]:
        """Bits b_0 ... b_{n-1}, least significant first"""
        return [self.bit(l) for l in range(self.n)]

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class BetaSet:
    """
    Strings of length n whose bit q is zero
    """

    q: NonNegativeInt
    n: PositiveInt

    @model_validator(mode="after")
    def check_qubit(self):
        if self.q >= self.n:
            raise ValueError(f"qubit {self.q} outside [0, {self.n})")
        return self

    @property
    def size(self) -> int:
        return 1 << (self.n - 1)

    def __contains__(self, b: int | BitString) -> bool:
        return (int(b) >> self.q) & 1 == 0


@dataclass(frozen=True, config=ConfigDict(arbitrary_types_allowed=True))
class IntervalRange:
    """
    Union of half-open real intervals [lo, hi), ordered by lo
    """

    intervals: list[tuple[Fraction, Fraction]]

    @property
    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def contains(self, value: Fraction | int) -> bool:
        for lo, hi in self.intervals:
            if lo <= value < hi:
                return True
        return False

    def integers(self) -> list[int]:
        values: list[int] = list()
        for lo, hi in self.intervals:
            start = -(-lo.numerator // lo.denominator)
            values.extend(range(start, -(-hi.numerator // hi.denominator)))
        return values

