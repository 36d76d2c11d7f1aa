"""
Ways of obtaining the marginal profile of an oracle
"""

from qpf_rdm.analysis.rdm import profile, profile_from_state
from qpf_rdm.config import DEFAULT_SETTINGS, Settings
from qpf_rdm.exceptions import CapacityError
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.oracle import PeriodicFunction, check_period_fits
from qpf_rdm.models.profiler import ProfileBuilder
from qpf_rdm.models.rdm import MarginalProfile
from qpf_rdm.simulation.circuit import PostSelect, run_full_circuit


class DirectProfileBuilder(ProfileBuilder):
    """
    Evaluates the beta_q sums of the canonical x0 = 0 comb for the period of f
    """

    def __init__(
        self, max_qubits: int | None = None, settings: Settings = DEFAULT_SETTINGS
    ) -> None:
        super().__init__(settings.direct_limit if max_qubits is None else max_qubits)
        self.settings = settings

    @property
    def name(self) -> str:
        return "direct"

    def build_profile(self, f: PeriodicFunction, domain: Domain) -> MarginalProfile:
        if domain.n > self.max_qubits:
            raise CapacityError(f"direct path supports n <= {self.max_qubits}, got {domain.n}")
        r = check_period_fits(f.on(domain))
        return profile(domain, r, self.settings)


class CircuitProfileBuilder(ProfileBuilder):
    """
    Runs the two-register circuit, post-selected on a0 = f(0), and traces out each qubit
    """

    def __init__(
        self, max_qubits: int | None = None, settings: Settings = DEFAULT_SETTINGS
    ) -> None:
        super().__init__(settings.full_circuit_limit if max_qubits is None else max_qubits)
        self.settings = settings

    @property
    def name(self) -> str:
        return "full"

    def build_profile(self, f: PeriodicFunction, domain: Domain) -> MarginalProfile:
        if domain.n > self.max_qubits:
            raise CapacityError(
                f"two-register simulation supports n <= {self.max_qubits}, got {domain.n}"
            )
        f = f.on(domain)
        r = check_period_fits(f)
        state, _ = run_full_circuit(domain, f, PostSelect(a0=f.evaluate(0)), self.settings)
        return profile_from_state(state, r_true=r, settings=self.settings)


def builder_for(mode: str, settings: Settings = DEFAULT_SETTINGS) -> ProfileBuilder:
    if mode == "full":
        return CircuitProfileBuilder(settings=settings)
    return DirectProfileBuilder(settings=settings)
