import numpy as np
from pydantic import ConfigDict, NonNegativeInt, PositiveInt, model_validator
from pydantic.dataclasses import dataclass

from qpf_rdm.models.domain import Domain

NORM_TOLERANCE = 1e-12


@dataclass(config=ConfigDict(arbitrary_types_allowed=True))
class StateVector:
    """
    First-register amplitudes, index b = sum_l b_l 2^l
    """

    amplitudes: np.ndarray
    domain: Domain

    @model_validator(mode="after")
    def check_shape(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.domain.N,):
            raise ValueError(
                f"expected {self.domain.N} amplitudes, got shape {self.amplitudes.shape}"
            )
        return self

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def is_normalized(self, tolerance: float = NORM_TOLERANCE) -> bool:
        return abs(self.norm - 1.0) <= tolerance

    def normalized(self) -> "StateVector":
        return StateVector(amplitudes=self.amplitudes / self.norm, domain=self.domain)

    def distance(self, other: "StateVector") -> float:
        """Largest amplitude-wise difference"""
        return float(np.max(np.abs(self.amplitudes - other.amplitudes)))


@dataclass(frozen=True)
class MeasurementRecord:
    """
    Outcome of measuring the second register
    Args:
        a0 (int): measured function value
        multiplicity (int): number of x in [0, N) with f(x) = a0
        seed (int): seed of the sampling generator, None when post-selected
    """

    a0: NonNegativeInt
    multiplicity: PositiveInt
    seed: NonNegativeInt | None = None
