"""
One-qubit reduced density matrices of the first register

rho00 = sum_{b in beta_q} |C_b|^2
rho01 = sum_{b in beta_q} C_b conj(C_xi(b)), xi(b) = b with bit q set
"""

import math
from collections import defaultdict

import numpy as np

from qpf_rdm.config import DEFAULT_SETTINGS, Settings
from qpf_rdm.core import beta_indices
from qpf_rdm.exceptions import DomainArgumentError
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.rdm import MarginalProfile, OneQubitRDM
from qpf_rdm.models.state import StateVector
from qpf_rdm.simulation.direct import check_comb, geometric_phase_sum, multiplicity


def accumulate(
    values: np.ndarray, n: int, settings: Settings = DEFAULT_SETTINGS
) -> complex | float:
    """
    Sum of an array; error-free (fsum) on the real and imaginary parts for large registers
    """
    if n < settings.compensated_threshold:
        return values.sum()

    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def rdm_from_state(
    state: StateVector, q: int, settings: Settings = DEFAULT_SETTINGS
) -> OneQubitRDM:
    """
    Partial trace over every qubit except q
    """
    domain = state.domain
    zeros = beta_indices(domain, q)
    ones = zeros | (1 << q)

    amplitudes = state.amplitudes
    rho00 = float(accumulate(np.abs(amplitudes[zeros]) ** 2, domain.n, settings))
    rho11 = float(accumulate(np.abs(amplitudes[ones]) ** 2, domain.n, settings))
    rho01 = complex(accumulate(amplitudes[zeros] * np.conj(amplitudes[ones]), domain.n, settings))

    # normalise the trace away from rounding drift
    trace = rho00 + rho11
    return OneQubitRDM(rho00=rho00 / trace, rho11=rho11 / trace, rho01=rho01 / trace, q=q)


def dirichlet_kernel(domain: Domain, r: int, M: int, b: np.ndarray) -> np.ndarray:
    """
    |sum_{m<M} exp(i theta m)|^2 = sin^2(M theta/2) / sin^2(theta/2), theta = 2 pi r b / N
    The phase index r b mod N is exact, so theta = 0 mod 2 pi switches to the limit M^2
    """
    N = domain.N
    step = (r * b) % N
    resonant = step == 0

    numerator = np.sin(np.pi * ((step * M) % N) / N) ** 2
    denominator = np.sin(np.pi * step / N) ** 2
    denominator[resonant] = 1.0

    kernel = numerator / denominator
    kernel[resonant] = float(M) ** 2
    return kernel


def rho00_direct(
    domain: Domain, r: int, q: int, x0: int = 0, settings: Settings = DEFAULT_SETTINGS
) -> float:
    """
    Diagonal element rho00 of qubit q evaluated from the beta_q sum
    Args:
        domain (Domain): first register size
        r (int): period
        q (int): qubit index
        x0 (int): preimage offset of the comb, which only enters through its multiplicity
        settings (Settings): source of compensated_threshold
    """
    check_comb(domain, r, x0)
    domain.check_qubit(q)
    M = multiplicity(domain, r, x0)

    b = beta_indices(domain, q)
    kernel = dirichlet_kernel(domain, r, M, b)
    return float(accumulate(kernel, domain.n, settings)) / (domain.N * M)


def rho01_direct(
    domain: Domain, r: int, q: int, a0: int = 0, settings: Settings = DEFAULT_SETTINGS
) -> complex:
    """
    Coherence rho01 of qubit q for the comb starting at a0, from the double sum
        1/(N M) sum_{b in beta_q} (sum_m e^{i 2pi (a0+mr) b/N}) (sum_m e^{-i 2pi (a0+mr) xi(b)/N})
    """
    if not 0 <= a0 < r:
        raise DomainArgumentError(f"a0={a0} outside [0, r={r})")
    check_comb(domain, r, a0)
    domain.check_qubit(q)

    N = domain.N
    M = multiplicity(domain, r, a0)
    zeros = beta_indices(domain, q)
    ones = zeros | (1 << q)

    left = np.exp(2j * np.pi * ((a0 * zeros) % N) / N) * geometric_phase_sum(
        domain, r, M, zeros
    )
    right = np.exp(2j * np.pi * ((a0 * ones) % N) / N) * geometric_phase_sum(
        domain, r, M, ones
    )
    return complex(accumulate(left * np.conj(right), domain.n, settings)) / (N * M)


def rdm_direct(
    domain: Domain, r: int, q: int, x0: int = 0, settings: Settings = DEFAULT_SETTINGS
) -> OneQubitRDM:
    rho00 = rho00_direct(domain, r, q, x0, settings)
    rho01 = rho01_direct(domain, r, q, x0, settings)
    return OneQubitRDM(rho00=rho00, rho11=1.0 - rho00, rho01=rho01, q=q)


def profile(domain: Domain, r: int, settings: Settings = DEFAULT_SETTINGS) -> MarginalProfile:
    """
    a_z of every first-register qubit for the canonical x0 = 0 comb
    """
    domain.check_period(r)
    az = [rho00_direct(domain, r, q, settings=settings) - 0.5 for q in range(domain.n)]
    return MarginalProfile(n=domain.n, az=np.clip(az, -0.5, 0.5), r_true=r)


def profile_from_state(
    state: StateVector, r_true: int | None = None, settings: Settings = DEFAULT_SETTINGS
) -> MarginalProfile:
    az = [rdm_from_state(state, q, settings).rho00 - 0.5 for q in range(state.domain.n)]
    return MarginalProfile(n=state.domain.n, az=np.clip(az, -0.5, 0.5), r_true=r_true)


def multiplicity_classes(domain: Domain, r: int) -> dict[int, list[int]]:
    """
    Preimage offsets x0 in [0, r) grouped by their preimage count M
    """
    domain.check_period(r)
    classes: dict[int, list[int]] = defaultdict(list)
    for x0 in range(r):
        classes[multiplicity(domain, r, x0)].append(x0)
    return dict(classes)


def a0_discrepancy(
    domain: Domain, r: int, q: int, settings: Settings = DEFAULT_SETTINGS
) -> dict[str, float]:
    """
    How much the 1-RDM of qubit q moves with the measured value a0
    Returns:
        within_class: largest rho00 spread among offsets sharing a multiplicity
        across_classes: largest rho00 spread over all offsets
        coherence: largest rho01 distance over all offsets
    """
    classes = multiplicity_classes(domain, r)
    rho00 = {x0: rho00_direct(domain, r, q, x0, settings) for x0 in range(r)}
    rho01 = [rho01_direct(domain, r, q, x0, settings) for x0 in range(r)]

    within = max(
        max(rho00[x0] for x0 in offsets) - min(rho00[x0] for x0 in offsets)
        for offsets in classes.values()
    )
    values = list(rho00.values())
    coherence = max(abs(u - v) for u in rho01 for v in rho01)

    return {
        "within_class": within,
        "across_classes": max(values) - min(values),
        "coherence": coherence,
    }
