import pytest

from qpf_rdm.exceptions import DomainArgumentError, InvalidOracleError
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.oracle import (
    PeriodicFunction,
    check_period_fits,
    multiplicative_order,
    parse_oracle,
    proper_divisors,
)


@pytest.fixture
def domain():
    return Domain(n=6)


def test_evaluate(domain):
    assert PeriodicFunction.sawtooth(domain, 3).evaluate(7) == 1
    assert PeriodicFunction.modexp(domain, 7, 15).evaluate(2) == 4
    assert PeriodicFunction.modexp(domain, 7, 15).evaluate(6) == 4


def test_evaluate_outside_domain(domain):
    with pytest.raises(DomainArgumentError):
        PeriodicFunction.sawtooth(domain, 3).evaluate(64)


def test_table_matches_evaluate(domain):
    for f in (PeriodicFunction.sawtooth(domain, 5), PeriodicFunction.modexp(domain, 2, 21)):
        assert f.table().tolist() == [f.evaluate(x) for x in range(domain.N)]


def test_fundamental_period(domain):
    assert PeriodicFunction.sawtooth(domain, 21).fundamental_period() == 21
    assert PeriodicFunction.modexp(domain, 7, 15).fundamental_period() == 4
    assert PeriodicFunction.modexp(domain, 2, 15).fundamental_period() == 4


def test_fundamental_period_needs_coprime_base(domain):
    with pytest.raises(InvalidOracleError):
        PeriodicFunction.modexp(domain, 3, 15).fundamental_period()


def test_validate_period(domain):
    f = PeriodicFunction.sawtooth(domain, 6)
    assert f.validate_period(6)
    assert not f.validate_period(12)
    assert not f.validate_period(5)
    assert not f.validate_period(64)
    assert not f.validate_period(0)


def test_validate_period_neighbours():
    domain = Domain(n=7)
    oracles = [PeriodicFunction.sawtooth(domain, r) for r in range(1, domain.N)]
    oracles += [
        PeriodicFunction.modexp(domain, a, S)
        for a, S in [(7, 15), (2, 15), (2, 21), (5, 33), (3, 7)]
    ]
    for f in oracles:
        r = f.fundamental_period()
        assert f.validate_period(r)
        if r >= 2:
            assert not f.validate_period(r - 1)
            assert not f.validate_period(r + 1)


def test_validate_period_sampled():
    # beyond the exhaustive limit only evenly spaced points are checked
    f = PeriodicFunction.sawtooth(Domain(n=12), 45)
    assert f.validate_period(45, samples=64, exhaustive_limit=256)
    assert not f.validate_period(44, samples=64, exhaustive_limit=256)


def test_modexp_values_in_range(domain):
    for a, S in [(7, 15), (2, 21), (5, 33)]:
        values = PeriodicFunction.modexp(domain, a, S).table()
        assert values.min() >= 1
        assert values.max() < S


def test_multiplicative_order():
    assert multiplicative_order(7, 15) == 4
    assert multiplicative_order(2, 21) == 6
    with pytest.raises(InvalidOracleError):
        multiplicative_order(6, 15)


def test_proper_divisors():
    assert proper_divisors(12) == [1, 2, 3, 4, 6]
    assert proper_divisors(1) == []


def test_parse_oracle(domain):
    f = parse_oracle("sawtooth:r=21", domain)
    assert (f.kind, f.r) == ("sawtooth", 21)
    assert f.spec == "sawtooth:r=21"

    g = parse_oracle(" modexp:a=7,S=15 ", domain)
    assert (g.kind, g.a, g.S) == ("modexp", 7, 15)


@pytest.mark.parametrize(
    "spec", ["sawtooth:r=0", "modexp:a=3,S=15", "modexp:a=7,S=1", "square:r=3", "sawtooth"]
)
def test_parse_oracle_rejects(spec, domain):
    with pytest.raises(InvalidOracleError):
        parse_oracle(spec, domain)


def test_check_period_fits():
    assert check_period_fits(PeriodicFunction.sawtooth(Domain(n=5), 21)) == 21
    with pytest.raises(DomainArgumentError):
        check_period_fits(PeriodicFunction.sawtooth(Domain(n=4), 21))
