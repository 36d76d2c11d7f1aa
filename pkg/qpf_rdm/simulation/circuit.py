"""
Two-register simulation of the period-finding circuit:
H on register 1, oracle |x>|y> -> |x>|y xor f(x)>, measurement of register 2, QFT on register 1
"""

import logging

import numpy as np
from pydantic import NonNegativeInt
from pydantic.dataclasses import dataclass

from qpf_rdm.config import DEFAULT_SETTINGS, Settings
from qpf_rdm.exceptions import CapacityError, InvalidOracleError, PostSelectionError
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.oracle import PeriodicFunction
from qpf_rdm.models.state import MeasurementRecord, StateVector
from qpf_rdm.simulation.direct import qft

logger = logging.getLogger(__name__)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


@dataclass(frozen=True)
class Sample:
    """Measure register 2 with a numpy PCG64 generator seeded by `seed`"""

    seed: NonNegativeInt


@dataclass(frozen=True)
class PostSelect:
    """Keep only the branch where register 2 reads a0"""

    a0: NonNegativeInt


def apply_single_qubit(state: np.ndarray, matrix: np.ndarray, qubit: int, total: int):
    """
    Applies a 2x2 gate to one qubit of a `total`-qubit flat state vector
    Qubit l is bit l of the flat index, i.e. axis total-1-l of the reshaped tensor
    """
    axis = total - 1 - qubit
    tensor = state.reshape([2] * total)
    tensor = np.tensordot(matrix, tensor, axes=([1], [axis]))
    return np.moveaxis(tensor, 0, axis).reshape(-1)


class TwoRegisterCircuit:
    def __init__(self, domain: Domain, f: PeriodicFunction, max_qubits: int | None = None):
        """
        Register 1 holds n qubits (flat index bits 0..n-1), register 2 holds n qubits
        (bits n..2n-1), so the joint state has 2^(2n) amplitudes
        Args:
            domain (Domain): size of register 1
            f (PeriodicFunction): oracle evaluated on register 1
            max_qubits (int): largest n accepted
        """
        limit = max_qubits or DEFAULT_SETTINGS.full_circuit_limit
        if domain.n > limit:
            raise CapacityError(
                f"two-register simulation supports n <= {limit}, got n={domain.n}"
            )

        self.domain = domain
        self.f = f.on(domain)
        self.values = self.f.table()
        if self.values.max() >= domain.N:
            raise InvalidOracleError(
                f"values of {self.f.spec} do not fit a {domain.n}-qubit second register"
            )

        self.state = np.zeros(domain.N * domain.N, dtype=np.complex128)
        self.state[0] = 1.0

    @property
    def total_qubits(self) -> int:
        return 2 * self.domain.n

    def as_registers(self) -> np.ndarray:
        """Amplitudes indexed [y, x]: register 2 value, register 1 value"""
        return self.state.reshape(self.domain.N, self.domain.N)

    def apply_hadamards(self):
        for qubit in range(self.domain.n):
            self.state = apply_single_qubit(self.state, HADAMARD, qubit, self.total_qubits)

    def apply_oracle(self):
        registers = self.as_registers()
        x = np.arange(self.domain.N)
        y = np.arange(self.domain.N)[:, None]
        permuted = np.empty_like(registers)
        permuted[y ^ self.values[None, :], x[None, :]] = registers
        self.state = permuted.reshape(-1)

    def register_two_distribution(self) -> np.ndarray:
        return np.sum(np.abs(self.as_registers()) ** 2, axis=1)

    def measure_register_two(self, a0_mode: Sample | PostSelect):
        """
        Collapses register 2 and returns the renormalised register 1 with the record
        """
        probabilities = self.register_two_distribution()

        if isinstance(a0_mode, Sample):
            rng = np.random.default_rng(a0_mode.seed)
            weights = probabilities / probabilities.sum()
            a0 = int(rng.choice(self.domain.N, p=weights))
            seed = a0_mode.seed
        else:
            a0, seed = a0_mode.a0, None
            if a0 >= self.domain.N or probabilities[a0] <= 0.0:
                raise PostSelectionError(f"a0={a0} is not in the image of {self.f.spec}")

        multiplicity = int(np.count_nonzero(self.values == a0))
        register = self.as_registers()[a0] / np.sqrt(probabilities[a0])
        logger.debug(
            "register 2 collapsed to a0=%d (M=%d, p=%.6g)", a0, multiplicity, probabilities[a0]
        )

        record = MeasurementRecord(a0=a0, multiplicity=multiplicity, seed=seed)
        return StateVector(amplitudes=register, domain=self.domain), record


def prepare_measured_state(
    domain: Domain,
    f: PeriodicFunction,
    a0_mode: Sample | PostSelect,
    settings: Settings = DEFAULT_SETTINGS,
) -> tuple[StateVector, MeasurementRecord]:
    """
    Runs the circuit up to the measurement of register 2 (the pre-QFT state)
    """
    circuit = TwoRegisterCircuit(domain, f, settings.full_circuit_limit)
    circuit.apply_hadamards()
    circuit.apply_oracle()
    return circuit.measure_register_two(a0_mode)


def run_full_circuit(
    domain: Domain,
    f: PeriodicFunction,
    a0_mode: Sample | PostSelect,
    settings: Settings = DEFAULT_SETTINGS,
) -> tuple[StateVector, MeasurementRecord]:
    phi, record = prepare_measured_state(domain, f, a0_mode, settings)
    return qft(phi, settings=settings), record
