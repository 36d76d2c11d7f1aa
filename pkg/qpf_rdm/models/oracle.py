"""
Periodic functions driving the circuit
"""

import math
import re
from typing import Literal

import numpy as np
from pydantic import PositiveInt, model_validator
from pydantic.dataclasses import dataclass

from qpf_rdm.exceptions import DomainArgumentError, InvalidOracleError
from qpf_rdm.models.domain import Domain

_SAWTOOTH_PATTERN = re.compile(r"^sawtooth:r=(\d+)$")
_MODEXP_PATTERN = re.compile(r"^modexp:a=(\d+),S=(\d+)$")


@dataclass(frozen=True)
class PeriodicFunction:
    """
    Oracle f on [0, N)
    - sawtooth: f(x) = x mod r
    - modexp: f(x) = a^x mod S, with gcd(a, S) = 1
    """

    kind: Literal["sawtooth", "modexp"]
    domain: Domain
    r: PositiveInt | None = None
    a: PositiveInt | None = None
    S: PositiveInt | None = None

    @model_validator(mode="after")
    def check_parameters(self):
        if self.kind == "sawtooth" and self.r is None:
            raise ValueError("sawtooth oracle needs its period r")
        if self.kind == "modexp" and (self.a is None or self.S is None):
            raise ValueError("modexp oracle needs a base a and a modulus S")
        return self

    @classmethod
    def sawtooth(cls, domain: Domain, r: int) -> "PeriodicFunction":
        return cls(kind="sawtooth", domain=domain, r=r)

    @classmethod
    def modexp(cls, domain: Domain, a: int, S: int) -> "PeriodicFunction":
        return cls(kind="modexp", domain=domain, a=a, S=S)

    def on(self, domain: Domain) -> "PeriodicFunction":
        """Same function over a different domain"""
        return PeriodicFunction(kind=self.kind, domain=domain, r=self.r, a=self.a, S=self.S)

    @property
    def spec(self) -> str:
        if self.kind == "sawtooth":
            return f"sawtooth:r={self.r}"
        return f"modexp:a={self.a},S={self.S}"

    def evaluate(self, x: int) -> int:
        self.domain.check_value(x)
        if self.kind == "sawtooth":
            return x % self.r
        return pow(self.a, x, self.S)

    def table(self) -> np.ndarray:
        """
        f over the whole domain
        """
        x = np.arange(self.domain.N, dtype=np.int64)
        if self.kind == "sawtooth":
            return x % self.r

        values = np.empty(self.domain.N, dtype=np.int64)
        current = 1 % self.S
        for index in range(self.domain.N):
            values[index] = current
            current = (current * self.a) % self.S
        return values

    def fundamental_period(self) -> int:
        if self.kind == "sawtooth":
            return self.r
        return multiplicative_order(self.a, self.S)

    def validate_period(
        self, r: int, samples: int = 1024, exhaustive_limit: int = 2**16
    ) -> bool:
        """
        True iff f(x) == f(x + r) on the checked points and no proper divisor of r passes too
        Args:
            r (int): candidate period
            samples (int): evenly spaced points checked when N exceeds exhaustive_limit
            exhaustive_limit (int): domains up to this size are checked on every x
        """
        N = self.domain.N
        if r < 1 or r >= N:
            return False

        values = self.table()
        if not self._shift_invariant(values, r, samples, exhaustive_limit):
            return False

        return not any(
            self._shift_invariant(values, d, samples, exhaustive_limit)
            for d in proper_divisors(r)
        )

    @staticmethod
    def _shift_invariant(values: np.ndarray, shift: int, samples: int, exhaustive_limit: int):
        last = len(values) - shift
        if len(values) <= exhaustive_limit:
            points = np.arange(last, dtype=np.int64)
        else:
            points = np.unique(np.linspace(0, last - 1, samples).astype(np.int64))
        return bool(np.array_equal(values[points], values[points + shift]))


def multiplicative_order(a: int, S: int) -> int:
    """
    Smallest r >= 1 with a^r = 1 mod S, by brute force
    """
    if S < 2 or math.gcd(a, S) != 1:
        raise InvalidOracleError(f"a={a} is not invertible modulo S={S}")

    order, value = 1, a % S
    while value != 1:
        value = (value * a) % S
        order += 1
    return order


def proper_divisors(r: int) -> list[int]:
    return [d for d in range(1, r // 2 + 1) if r % d == 0]


def parse_oracle(spec: str, domain: Domain) -> PeriodicFunction:
    """
    Reads 'sawtooth:r=<int>' or 'modexp:a=<int>,S=<int>'
    """
    spec = spec.strip()
    if match := _SAWTOOTH_PATTERN.match(spec):
        r = int(match.group(1))
        if r < 1:
            raise InvalidOracleError(f"sawtooth period must be positive: {spec!r}")
        return PeriodicFunction.sawtooth(domain, r)

    if match := _MODEXP_PATTERN.match(spec):
        a, S = int(match.group(1)), int(match.group(2))
        if a < 1 or S < 2 or math.gcd(a, S) != 1:
            raise InvalidOracleError(f"modexp needs gcd(a, S) = 1 and S >= 2: {spec!r}")
        return PeriodicFunction.modexp(domain, a, S)

    raise InvalidOracleError(f"unrecognised oracle {spec!r}")


def check_period_fits(f: PeriodicFunction) -> int:
    r = f.fundamental_period()
    if r >= f.domain.N:
        raise DomainArgumentError(
            f"period {r} of {f.spec} does not fit in {f.domain.n} bits"
        )
    return r
