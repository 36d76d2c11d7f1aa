from abc import ABC, abstractmethod

from qpf_rdm.models.domain import Domain
from qpf_rdm.models.oracle import PeriodicFunction
from qpf_rdm.models.rdm import MarginalProfile


class ProfileBuilder(ABC):
    def __init__(self, max_qubits: int) -> None:
        """
        Abstract class producing the a_z profile the period finder reads
        Args:
            max_qubits (int): largest first register the builder can simulate
        """
        self.max_qubits = max_qubits

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def build_profile(self, f: PeriodicFunction, domain: Domain) -> MarginalProfile:
        """
        Abstract method returning a_z of every first-register qubit for f over domain
        Must be implemented for the child classes
        """
        pass
