import numpy as np
import pytest
from pydantic import ValidationError

from qpf_rdm.config import Settings
from qpf_rdm.exceptions import CapacityError, DomainArgumentError, PostSelectionError
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.oracle import PeriodicFunction
from qpf_rdm.models.state import StateVector
from qpf_rdm.simulation.circuit import (
    PostSelect,
    Sample,
    TwoRegisterCircuit,
    prepare_measured_state,
    run_full_circuit,
)
from qpf_rdm.simulation.direct import build_phi_direct, build_psi_direct, multiplicity, qft


def basis_state(domain: Domain, b: int) -> StateVector:
    amplitudes = np.zeros(domain.N, dtype=np.complex128)
    amplitudes[b] = 1.0
    return StateVector(amplitudes=amplitudes, domain=domain)


def random_state(domain: Domain, rng: np.random.Generator) -> StateVector:
    amplitudes = rng.normal(size=domain.N) + 1j * rng.normal(size=domain.N)
    return StateVector(amplitudes=amplitudes, domain=domain).normalized()


def test_state_vector_shape_is_checked():
    with pytest.raises(ValidationError):
        StateVector(amplitudes=np.ones(3), domain=Domain(n=2))


@pytest.mark.parametrize(
    "r, x0, support, amplitude",
    [(2, 0, [0, 2, 4, 6], 0.5), (3, 0, [0, 3, 6], 1 / np.sqrt(3)), (3, 2, [2, 5], 1 / np.sqrt(2))],
)
def test_build_phi_direct(r, x0, support, amplitude):
    phi = build_phi_direct(Domain(n=3), r, x0)
    expected = np.zeros(8)
    expected[support] = amplitude
    np.testing.assert_allclose(phi.amplitudes, expected, atol=1e-15)
    assert phi.is_normalized()


def test_build_phi_direct_rejects_offset():
    with pytest.raises(DomainArgumentError):
        build_phi_direct(Domain(n=3), 3, 3)


def test_multiplicity():
    domain = Domain(n=3)
    assert [multiplicity(domain, 3, x0) for x0 in range(3)] == [3, 3, 2]
    assert multiplicity(domain, 4, 0) == 2


def test_build_psi_direct_period_one():
    for n in range(1, 8):
        psi = build_psi_direct(Domain(n=n), 1)
        expected = np.zeros(2**n)
        expected[0] = 1.0
        np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-12)


def test_build_psi_direct_divisor_period():
    # r | N: weight 1/r on each b = j N / r
    psi = build_psi_direct(Domain(n=3), 4)
    np.testing.assert_allclose(psi.probabilities, [0.25, 0, 0.25, 0, 0.25, 0, 0.25, 0], atol=1e-15)


def test_build_psi_direct_concentrates_on_multiples():
    for n in range(1, 9):
        domain = Domain(n=n)
        for k in range(n):
            r = 1 << k
            expected = np.zeros(domain.N)
            expected[:: domain.N // r] = 1.0 / r
            np.testing.assert_allclose(build_psi_direct(domain, r).probabilities, expected, atol=1e-12)


def test_build_psi_direct_normalized():
    psi = build_psi_direct(Domain(n=3), 3)
    assert psi.is_normalized()
    assert np.argmax(psi.probabilities) == 0
    assert psi.probabilities[3] > psi.probabilities[2]


def test_qft_examples():
    domain = Domain(n=3)
    uniform = np.full(8, 1 / np.sqrt(8))
    np.testing.assert_allclose(qft(basis_state(domain, 0)).amplitudes, uniform, atol=1e-15)

    back = qft(StateVector(amplitudes=uniform, domain=domain))
    np.testing.assert_allclose(back.amplitudes, [1, 0, 0, 0, 0, 0, 0, 0], atol=1e-15)

    comb = np.zeros(8)
    comb[[0, 4]] = 1 / np.sqrt(2)
    output = qft(StateVector(amplitudes=comb, domain=domain))
    np.testing.assert_allclose(output.amplitudes, [0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0], atol=1e-15)


def test_qft_is_unitary():
    rng = np.random.default_rng(11)
    for n in range(1, 11):
        state = random_state(Domain(n=n), rng)
        assert abs(qft(state).norm - state.norm) <= 1e-12
        assert abs(qft(state, fast=True).norm - state.norm) <= 1e-12


def test_fast_qft_matches_dense():
    rng = np.random.default_rng(3)
    for n in (1, 4, 8):
        state = random_state(Domain(n=n), rng)
        assert qft(state, fast=True).distance(qft(state, fast=False)) <= 1e-12


def test_psi_is_qft_of_phi():
    for n in range(1, 7):
        domain = Domain(n=n)
        for r in range(1, domain.N):
            for x0 in range(r):
                psi = build_psi_direct(domain, r, x0)
                assert psi.distance(qft(build_phi_direct(domain, r, x0))) <= 1e-12


def test_postselected_state_equals_comb():
    domain = Domain(n=3)
    phi, record = prepare_measured_state(domain, PeriodicFunction.sawtooth(domain, 2), PostSelect(a0=0))
    np.testing.assert_allclose(phi.amplitudes, [0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0], atol=1e-15)
    assert (record.a0, record.multiplicity, record.seed) == (0, 4, None)


def test_full_circuit_matches_direct_path():
    for n in range(1, 7):
        domain = Domain(n=n)
        for r in range(1, domain.N):
            f = PeriodicFunction.sawtooth(domain, r)
            for x0 in range(r):
                psi, record = run_full_circuit(domain, f, PostSelect(a0=x0))
                assert record.multiplicity == multiplicity(domain, r, x0)
                assert psi.distance(build_psi_direct(domain, r, x0)) <= 1e-12


def test_register_two_distribution():
    domain = Domain(n=3)
    circuit = TwoRegisterCircuit(domain, PeriodicFunction.sawtooth(domain, 3))
    circuit.apply_hadamards()
    circuit.apply_oracle()
    np.testing.assert_allclose(
        circuit.register_two_distribution(), [3 / 8, 3 / 8, 2 / 8, 0, 0, 0, 0, 0], atol=1e-15
    )


def test_sampled_measurement():
    domain = Domain(n=3)
    f = PeriodicFunction.sawtooth(domain, 3)
    psi, record = run_full_circuit(domain, f, Sample(seed=7))
    assert record.a0 in {0, 1, 2}
    assert record.seed == 7
    assert record.multiplicity == multiplicity(domain, 3, record.a0)
    assert psi.distance(build_psi_direct(domain, 3, record.a0)) <= 1e-12

    again, repeated = run_full_circuit(domain, f, Sample(seed=7))
    assert repeated == record
    assert np.array_equal(again.amplitudes, psi.amplitudes)


def test_multiplicity_bounds():
    for n in range(1, 7):
        domain = Domain(n=n)
        for r in range(1, domain.N):
            for x0 in range(r):
                M = multiplicity(domain, r, x0)
                assert M in {domain.N // r, -(-domain.N // r)}


def test_postselection_outside_image():
    domain = Domain(n=3)
    with pytest.raises(PostSelectionError):
        run_full_circuit(domain, PeriodicFunction.sawtooth(domain, 3), PostSelect(a0=5))


def test_full_circuit_capacity():
    domain = Domain(n=14)
    with pytest.raises(CapacityError):
        TwoRegisterCircuit(domain, PeriodicFunction.sawtooth(domain, 3))


def test_qft_threshold_comes_from_settings():
    state = random_state(Domain(n=4), np.random.default_rng(5))
    early = Settings(fast_qft_threshold=2)
    assert np.array_equal(qft(state, settings=early).amplitudes, qft(state, fast=True).amplitudes)
    assert np.array_equal(qft(state).amplitudes, qft(state, fast=False).amplitudes)


def test_circuit_limit_comes_from_settings():
    domain = Domain(n=3)
    f = PeriodicFunction.sawtooth(domain, 3)
    with pytest.raises(CapacityError):
        run_full_circuit(domain, f, PostSelect(a0=0), Settings(full_circuit_limit=2))
