import numpy as np
import pytest
from pydantic import ValidationError

from qpf_rdm.analysis.model import az_analytic_pow2
from qpf_rdm.analysis.rdm import (
    a0_discrepancy,
    accumulate,
    multiplicity_classes,
    profile,
    profile_from_state,
    rdm_direct,
    rdm_from_state,
    rho00_direct,
    rho01_direct,
)
from qpf_rdm.config import Settings
from qpf_rdm.exceptions import DomainArgumentError
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.oracle import PeriodicFunction
from qpf_rdm.models.rdm import MarginalProfile, OneQubitRDM
from qpf_rdm.models.state import StateVector
from qpf_rdm.simulation.circuit import PostSelect, run_full_circuit
from qpf_rdm.simulation.direct import build_psi_direct


def test_rdm_of_zero_state():
    domain = Domain(n=3)
    amplitudes = np.zeros(8)
    amplitudes[0] = 1.0
    state = StateVector(amplitudes=amplitudes, domain=domain)
    for q in range(3):
        rdm = rdm_from_state(state, q)
        assert rdm.rho00 == 1.0
        assert rdm.rho01 == 0


def test_rdm_of_plus_state():
    state = StateVector(amplitudes=np.array([1, 1]) / np.sqrt(2), domain=Domain(n=1))
    rdm = rdm_from_state(state, 0)
    assert rdm.rho00 == pytest.approx(0.5, abs=1e-15)
    assert rdm.rho01 == pytest.approx(0.5, abs=1e-15)
    assert rdm.bloch.ax == pytest.approx(0.5, abs=1e-15)
    assert rdm.purity_radius() == pytest.approx(1.0, abs=1e-12)


def test_rdm_of_divisor_period():
    rdm = rdm_from_state(build_psi_direct(Domain(n=3), 4), 0)
    assert rdm.rho00 == pytest.approx(1.0, abs=1e-12)


def test_rdm_rejects_bad_qubit():
    with pytest.raises(DomainArgumentError):
        rdm_from_state(build_psi_direct(Domain(n=3), 3), 3)


def test_bloch_convention():
    rdm = OneQubitRDM(rho00=0.7, rho11=0.3, rho01=complex(0.1, -0.2), q=0)
    bloch = rdm.bloch
    assert (bloch.ax, bloch.ay) == (0.1, 0.2)
    assert bloch.az == pytest.approx(0.2)
    assert rdm.rho10 == complex(0.1, 0.2)
    assert rdm.is_hermitian()


def test_rho00_direct_examples():
    assert rho00_direct(Domain(n=3), 2, 2) == pytest.approx(0.5, abs=1e-12)
    for n in range(1, 7):
        for q in range(n):
            assert rho00_direct(Domain(n=n), 1, q) == pytest.approx(1.0, abs=1e-12)

    # n = 6, r = 7 on the last qubit: a_z = M / (2N) with M = 10
    rho00 = rho00_direct(Domain(n=6), 7, 5)
    assert rho00 == pytest.approx(0.578125, abs=1e-12)
    assert rho00 - 0.5 == pytest.approx(1 / 14, abs=0.01)


def test_rho00_direct_odd_periods_closed_form():
    # last qubit, odd r, M = ceil(N / r): a_z = M / 2N for even M, (M^2 - 1) / (2 N M) for odd M
    for n in range(2, 11):
        domain = Domain(n=n)
        for r in range(1, domain.N, 2):
            M = -(-domain.N // r)
            expected = M / (2 * domain.N) if M % 2 == 0 else (M * M - 1) / (2 * domain.N * M)
            assert rho00_direct(domain, r, n - 1) - 0.5 == pytest.approx(expected, abs=1e-12)


def test_rho00_direct_powers_of_two():
    for n in range(1, 11):
        domain = Domain(n=n)
        for k in range(n):
            for q in range(n):
                az = rho00_direct(domain, 1 << k, q) - 0.5
                assert az == pytest.approx(az_analytic_pow2(n, k, q), abs=1e-12)


def test_rho00_direct_matches_full_circuit():
    for n in range(1, 7):
        domain = Domain(n=n)
        for r in range(1, domain.N):
            f = PeriodicFunction.sawtooth(domain, r)
            psi, _ = run_full_circuit(domain, f, PostSelect(a0=f.evaluate(0)))
            for q in range(n):
                assert abs(rho00_direct(domain, r, q) - rdm_from_state(psi, q).rho00) <= 1e-9


def test_rho01_direct_examples():
    assert rho01_direct(Domain(n=3), 1, 0, 0) == pytest.approx(0, abs=1e-15)

    domain = Domain(n=3)
    expected = rdm_from_state(build_psi_direct(domain, 2, 0), 1).rho01
    assert abs(rho01_direct(domain, 2, 1, 0) - expected) <= 1e-9

    # x0 = 0 and x0 = 1 share M = 3 but sit at different phases
    assert abs(rho01_direct(domain, 3, 0, 0) - rho01_direct(domain, 3, 0, 1)) > 1e-3


def test_rho01_direct_matches_state():
    for n in range(1, 7):
        domain = Domain(n=n)
        for r in range(1, domain.N):
            for x0 in range(r):
                psi = build_psi_direct(domain, r, x0)
                for q in range(n):
                    traced = rdm_from_state(psi, q).rho01
                    assert abs(rho01_direct(domain, r, q, x0) - traced) <= 1e-9


def test_rho01_direct_rejects_offset():
    with pytest.raises(DomainArgumentError):
        rho01_direct(Domain(n=3), 3, 0, 3)


def test_profile_examples():
    domain = Domain(n=3)
    np.testing.assert_allclose(profile(domain, 1).az, [0.5, 0.5, 0.5], atol=1e-12)
    np.testing.assert_allclose(profile(domain, 4).az, [0.5, 0, 0], atol=1e-12)

    az = profile(domain, 3).az
    assert az[0] == pytest.approx(0, abs=1e-12)
    assert az[1] > 0
    assert az[2] > 0
    assert profile(domain, 3).r_true == 3


def test_profile_from_state_matches_profile():
    domain = Domain(n=5)
    for r in range(1, domain.N):
        direct = profile(domain, r)
        traced = profile_from_state(build_psi_direct(domain, r), r_true=r)
        np.testing.assert_allclose(traced.az, direct.az, atol=1e-9)


def test_marginal_profile_validation():
    with pytest.raises(ValidationError):
        MarginalProfile(n=3, az=np.zeros(2))
    with pytest.raises(ValidationError):
        MarginalProfile(n=1, az=np.array([0.7]))


def test_rho00_within_multiplicity_class():
    for n in range(1, 7):
        domain = Domain(n=n)
        for r in range(1, domain.N):
            for offsets in multiplicity_classes(domain, r).values():
                for q in range(n):
                    values = [
                        rdm_from_state(build_psi_direct(domain, r, x0), q).rho00 for x0 in offsets
                    ]
                    assert max(values) - min(values) <= 1e-12


def test_multiplicity_classes():
    assert multiplicity_classes(Domain(n=3), 3) == {3: [0, 1], 2: [2]}
    assert multiplicity_classes(Domain(n=3), 4) == {2: [0, 1, 2, 3]}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_coherence_depends_on_offset(n):
    domain = Domain(n=n)
    coherences = [
        a0_discrepancy(domain, r, q)["coherence"] for r in range(2, domain.N) for q in range(n)
    ]
    assert max(coherences) > 1e-3


def test_a0_discrepancy_report():
    report = a0_discrepancy(Domain(n=3), 3, 0)
    assert report["within_class"] == pytest.approx(0, abs=1e-12)
    assert report["coherence"] > 1e-3
    assert report["across_classes"] >= report["within_class"]


def test_rdm_direct_matches_state():
    domain = Domain(n=4)
    for r in range(1, domain.N):
        for x0 in range(r):
            psi = build_psi_direct(domain, r, x0)
            for q in range(4):
                direct = rdm_direct(domain, r, q, x0)
                traced = rdm_from_state(psi, q)
                np.testing.assert_allclose(direct.matrix, traced.matrix, atol=1e-9)


def test_rdm_sanity_on_random_draws():
    rng = np.random.default_rng(20240517)
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        domain = Domain(n=n)
        r = int(rng.integers(1, domain.N))
        q = int(rng.integers(0, n))
        x0 = int(rng.integers(0, r))

        rdm = rdm_from_state(build_psi_direct(domain, r, x0), q)
        assert abs(rdm.trace - 1.0) <= 1e-12
        assert rdm.is_hermitian()
        eigenvalues = rdm.eigenvalues()
        assert eigenvalues.min() >= -1e-12
        assert eigenvalues.max() <= 1 + 1e-12
        assert abs(rdm.bloch.az) <= 0.5 + 1e-12
        assert rdm.purity_radius() <= 1 + 1e-9


def test_purity_of_power_of_two_periods():
    # the output state is a product state, so every qubit marginal is pure
    for n in range(1, 9):
        domain = Domain(n=n)
        for k in range(n):
            psi = build_psi_direct(domain, 1 << k)
            for q in range(n):
                assert rdm_from_state(psi, q).purity_radius() == pytest.approx(1.0, abs=1e-9)


def test_compensated_sums_follow_settings():
    values = np.array([1e16, 1.0, -1e16])
    assert accumulate(values, 3) == 0.0
    assert accumulate(values, 3, Settings(compensated_threshold=3)) == 1.0
    assert accumulate(values.astype(np.complex128), 3, Settings(compensated_threshold=2)) == 1.0


def test_direct_rdm_is_unchanged_by_compensated_sums():
    domain = Domain(n=6)
    exact = Settings(compensated_threshold=1)
    for r in (3, 7, 9):
        for q in range(domain.n):
            assert rho00_direct(domain, r, q, settings=exact) == pytest.approx(
                rho00_direct(domain, r, q), abs=1e-14
            )
