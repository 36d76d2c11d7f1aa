"""
Closed-form first-register states: the post-measurement comb and its Fourier transform
"""

import numpy as np

from qpf_rdm.config import DEFAULT_SETTINGS, Settings
from qpf_rdm.exceptions import DomainArgumentError
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.state import StateVector

# rows of the dense QFT matrix materialised at once
_DENSE_BLOCK_ELEMENTS = 1 << 22


def multiplicity(domain: Domain, r: int, x0: int) -> int:
    """
    Number of preimages x0 + m r inside [0, N)
    """
    return (domain.N - 1 - x0) // r + 1


def check_comb(domain: Domain, r: int, x0: int) -> None:
    domain.check_period(r)
    if not 0 <= x0 < r:
        raise DomainArgumentError(f"offset x0={x0} outside [0, r={r})")


def build_phi_direct(domain: Domain, r: int, x0: int = 0) -> StateVector:
    """
    Uniform superposition of x0, x0 + r, x0 + 2r, ... below N
    """
    check_comb(domain, r, x0)
    M = multiplicity(domain, r, x0)

    amplitudes = np.zeros(domain.N, dtype=np.complex128)
    amplitudes[x0::r] = 1.0 / np.sqrt(M)
    return StateVector(amplitudes=amplitudes, domain=domain)


def geometric_phase_sum(domain: Domain, r: int, M: int, b: np.ndarray) -> np.ndarray:
    """
    sum_{m<M} exp(i 2 pi m r b / N) for every b, summed in closed form
    Phases are reduced modulo N in integer arithmetic, so resonances are detected exactly
    """
    N = domain.N
    step = (r * b) % N
    total = (step * M) % N

    resonant = step == 0
    numerator = 1.0 - np.exp(2j * np.pi * total / N)
    denominator = 1.0 - np.exp(2j * np.pi * step / N)
    denominator[resonant] = 1.0

    sums = numerator / denominator
    sums[resonant] = M
    return sums


def build_psi_direct(domain: Domain, r: int, x0: int = 0) -> StateVector:
    """
    Output of the QFT applied to the comb, evaluated from the closed form
        C_b = 1/sqrt(N M) exp(i 2 pi x0 b / N) sum_m exp(i 2 pi m r b / N)
    """
    check_comb(domain, r, x0)
    N = domain.N
    M = multiplicity(domain, r, x0)

    b = np.arange(N, dtype=np.int64)
    offset_phase = np.exp(2j * np.pi * ((x0 * b) % N) / N)
    amplitudes = offset_phase * geometric_phase_sum(domain, r, M, b) / np.sqrt(N * M)
    return StateVector(amplitudes=amplitudes, domain=domain)


def qft(
    state: StateVector, fast: bool | None = None, settings: Settings = DEFAULT_SETTINGS
) -> StateVector:
    """
    output_b = 1/sqrt(N) sum_x exp(i 2 pi x b / N) input_x
    Args:
        state (StateVector): input amplitudes
        fast (bool): use the radix-2 FFT; by default only from the fast_qft_threshold size on
        settings (Settings): source of fast_qft_threshold
    """
    domain = state.domain
    if fast is None:
        fast = domain.n >= settings.fast_qft_threshold

    if fast:
        amplitudes = np.fft.ifft(state.amplitudes, norm="ortho")
    else:
        amplitudes = dense_qft(state.amplitudes, domain)

    return StateVector(amplitudes=amplitudes, domain=domain)


def dense_qft(vector: np.ndarray, domain: Domain) -> np.ndarray:
    N = domain.N
    x = np.arange(N, dtype=np.int64)
    rows = max(1, _DENSE_BLOCK_ELEMENTS // N)

    output = np.empty(N, dtype=np.complex128)
    for start in range(0, N, rows):
        b = x[start : start + rows]
        phases = np.outer(b, x) % N
        block = np.exp(2j * np.pi * phases / N)
        output[start : start + rows] = block @ vector

    return output / np.sqrt(N)
