import numpy as np
from pydantic import ConfigDict, NonNegativeInt, PositiveInt, model_validator
from pydantic.dataclasses import dataclass


@dataclass(frozen=True)
class BlochCoefficients:
    """
    rho = I/2 + a . sigma, with rho00 = 1/2 + az and rho01 = ax - i ay
    """

    ax: float
    ay: float
    az: float

    @property
    def radius(self) -> float:
        return float(np.sqrt(self.ax**2 + self.ay**2 + self.az**2))


@dataclass(frozen=True, config=ConfigDict(arbitrary_types_allowed=True))
class OneQubitRDM:
    """
    2x2 reduced density matrix of qubit q; rho10 is the conjugate of rho01
    """

    rho00: float
    rho11: float
    rho01: complex
    q: NonNegativeInt

    @property
    def rho10(self) -> complex:
        return self.rho01.conjugate()

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.rho00, self.rho01], [self.rho10, self.rho11]], dtype=np.complex128
        )

    @property
    def trace(self) -> float:
        return self.rho00 + self.rho11

    @property
    def bloch(self) -> BlochCoefficients:
        return BlochCoefficients(
            ax=self.rho01.real, ay=-self.rho01.imag, az=self.rho00 - 0.5
        )

    def is_hermitian(self, tolerance: float = 1e-12) -> bool:
        matrix = self.matrix
        return bool(np.allclose(matrix, matrix.conj().T, atol=tolerance))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity_radius(self) -> float:
        """2|a|, at most one; equal to one when qubit q is not entangled with the others"""
        return 2.0 * self.bloch.radius


@dataclass(config=ConfigDict(arbitrary_types_allowed=True))
class MarginalProfile:
    """
    a_z of every first-register qubit for one period: the only input of the period finder
    """

    n: PositiveInt
    az: np.ndarray
    r_true: PositiveInt | None = None

    @model_validator(mode="after")
    def check_values(self):
        self.az = np.asarray(self.az, dtype=np.float64)
        if self.az.shape != (self.n,):
            raise ValueError(f"expected {self.n} a_z values, got shape {self.az.shape}")
        if np.any(np.abs(self.az) > 0.5 + 1e-12):
            raise ValueError("a_z values must lie in [-0.5, 0.5]")
        return self

    def signal_qubits(self, eps: float) -> list[int]:
        return [q for q in range(self.n) if self.az[q] > eps]
