from pydantic import Field, NonNegativeInt, PositiveInt, model_validator
from pydantic.dataclasses import dataclass


@dataclass(frozen=True)
class PeriodHypothesis:
    """
    Candidate periods 2^q' r' with odd r' in [2^l, 2^(l+1)), read off a marginal profile
    Args:
        n (int): qubits of the profile
        l (int): first qubit from 0 with a_z above the zero threshold
        qprime (int): offset from the last qubit of the first qubit (from the last) with signal
        candidates (list[int]): ascending candidate periods below 2^n
    """

    n: PositiveInt
    l: NonNegativeInt
    qprime: NonNegativeInt
    candidates: list[PositiveInt]

    @model_validator(mode="after")
    def check_candidates(self):
        scale = 1 << self.qprime
        for r in self.candidates:
            odd_part, remainder = divmod(r, scale)
            if remainder or odd_part % 2 == 0 or not (1 << self.l) <= odd_part < (2 << self.l):
                raise ValueError(f"{r} is not 2^{self.qprime} * odd in [2^{self.l}, 2^{self.l + 1})")
        return self

    @property
    def q_star(self) -> int:
        return self.n - 1 - self.qprime

    @property
    def scale(self) -> int:
        return 1 << self.qprime

    def __contains__(self, r: int) -> bool:
        return r in self.candidates


@dataclass
class FinderResult:
    """
    Outcome of a period search
    Args:
        period (int): recovered period, None when nothing validated
        iterations (int): secant iterations of the deciding round
        qubits_used (int): first-register size of the deciding round
        trace (list[dict]): per-step record of the search, JSON-ready
    """

    period: PositiveInt | None
    iterations: NonNegativeInt
    qubits_used: PositiveInt
    trace: list[dict] = Field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.period is not None

    def as_dict(self) -> dict:
        return {
            "period": self.period,
            "iterations": self.iterations,
            "qubits_used": self.qubits_used,
            "trace": self.trace,
        }


@dataclass(frozen=True)
class AccuracyReport:
    bits: PositiveInt
    extra: NonNegativeInt
    total_periods: PositiveInt
    correct: NonNegativeInt

    @model_validator(mode="after")
    def check_counts(self):
        if self.correct > self.total_periods:
            raise ValueError("more correct periods than periods tried")
        return self

    @property
    def accuracy(self) -> float:
        return self.correct / self.total_periods

    def as_row(self) -> dict:
        return {
            "bits": self.bits,
            "extra": self.extra,
            "total": self.total_periods,
            "correct": self.correct,
            "accuracy": self.accuracy,
        }
