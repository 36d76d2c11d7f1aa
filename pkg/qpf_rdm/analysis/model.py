"""
Analytic and approximate models of the one-qubit marginals a_z^(q)(r)

- power-of-two periods: a_z is exactly 0.5 or 0
- peak pattern: a_z > 0 only for r = 2^k r' with odd r' < 2^(q+1) and k <= n-1-q
- counting model: rho00 ~ fraction of the multiples j N / r falling inside the beta_q range
- approximate marginal of qubit n-1-q' on r = 2^q' r': (2^q'/r) ceil((r/2^q')/2) - 1/2
"""

import math
from fractions import Fraction

from pydantic import NonNegativeInt, PositiveInt
from pydantic.dataclasses import dataclass

from qpf_rdm.analysis.rdm import rho00_direct
from qpf_rdm.core import beta_range
from qpf_rdm.exceptions import DomainArgumentError
from qpf_rdm.models.domain import Domain

# max |az_approx - exact a_z| over the first-quarter candidates of n = 6, q' in {0, 1}
# worst case r = 10, q' = 1: 3/28 - 1/10 = 1/140
DELTA_QUARTER = 0.0072


def split_power_of_two(r: int) -> tuple[int, int]:
    """
    r = 2^k r' with r' odd; returns (k, r')
    """
    if r < 1:
        raise DomainArgumentError(f"period must be positive, got {r}")
    k = (r & -r).bit_length() - 1
    return k, r >> k


def az_analytic_pow2(n: int, k: int, q: int) -> float:
    """
    a_z^(q)(2^k): 0.5 when k <= n-q-1, 0 otherwise
    """
    if not 0 <= k < n or not 0 <= q < n:
        raise DomainArgumentError(f"need 0 <= k, q < n, got n={n}, k={k}, q={q}")
    return 0.5 if k <= n - q - 1 else 0.0


def peak_predicate(n: int, q: int, r: int) -> bool:
    k, odd_part = split_power_of_two(r)
    return odd_part < (1 << (q + 1)) and k <= n - 1 - q


def peak_set(n: int, q: int) -> list[int]:
    Domain(n=n).check_qubit(q)
    return [r for r in range(1, 1 << n) if peak_predicate(n, q, r)]


def peak_set_delta(n: int, q: int) -> tuple[set[int], set[int]]:
    """
    Periods gained and lost by the peak set when moving from qubit q-1 to qubit q
    - added: 2^k r' for odd r' in (2^q, 2^(q+1)) and 0 <= k <= n-1-q
    - removed: 2^(n-q) r' for odd r' < 2^q
    """
    if not 1 <= q < n:
        raise DomainArgumentError(f"qubit {q} has no predecessor in [0, {n})")

    new_odd = range((1 << q) + 1, 1 << (q + 1), 2)
    added = {(1 << k) * odd for odd in new_odd for k in range(n - q)}
    removed = {(1 << (n - q)) * odd for odd in range(1, 1 << q, 2)}
    return added, removed


@dataclass(frozen=True)
class ApproxModel:
    """
    Approximate marginal of qubit q* = n-1-q' over the candidate family r = 2^q' r'
    """

    n: PositiveInt
    qprime: NonNegativeInt

    @property
    def qubit(self) -> int:
        return self.n - 1 - self.qprime

    @property
    def scale(self) -> int:
        return 1 << self.qprime

    def candidates(self) -> list[int]:
        return [self.scale * odd for odd in range(1, 1 << (self.n - self.qprime), 2)]

    def is_candidate(self, r: int) -> bool:
        if r < 1 or r % self.scale:
            return False
        odd_part = r // self.scale
        return odd_part % 2 == 1 and odd_part < (1 << (self.n - self.qprime))

    def rho00(self, r: int) -> Fraction:
        if not self.is_candidate(r):
            raise DomainArgumentError(
                f"r={r} is not of the form 2^{self.qprime} * odd below 2^{self.n}"
            )
        return Fraction(self.scale, r) * math.ceil(Fraction(r, self.scale) / 2)

    def az(self, r: int) -> float:
        return float(self.rho00(r) - Fraction(1, 2))

    def az_smooth(self, rho: float) -> float:
        """Continuation 2^q' / (2 rho) through the candidate values"""
        return self.scale / (2.0 * rho)


def az_approx(n: int, qprime: int, r: int) -> float:
    if not 0 <= qprime < n:
        raise DomainArgumentError(f"q'={qprime} outside [0, {n})")
    return ApproxModel(n=n, qprime=qprime).az(r)


def count_multiples(domain: Domain, r: int, q: int) -> int:
    """
    Number of j in [0, r) with j N / r inside the real range spanned by beta_q
    """
    domain.check_period(r)
    count = 0
    for lo, hi in beta_range(domain, q).intervals:
        # lo <= j N / r < hi  <=>  ceil(lo r / N) <= j < ceil(hi r / N)
        count += math.ceil(hi * r / domain.N) - math.ceil(lo * r / domain.N)
    return count


def rho00_counting_fraction(domain: Domain, r: int, q: int) -> Fraction:
    return Fraction(count_multiples(domain, r, q), r)


def rho00_counting(domain: Domain, r: int, q: int) -> float:
    return float(rho00_counting_fraction(domain, r, q))


def exact_az(domain: Domain, r: int, q: int) -> float:
    return rho00_direct(domain, r, q) - 0.5


def compare_rows(n: int, qprimes: list[int]) -> list[dict]:
    """
    Approximate against exact a_z on every candidate period of each qubit n-1-q'
    """
    domain = Domain(n=n)
    rows: list[dict] = list()
    for qprime in qprimes:
        model = ApproxModel(n=n, qprime=qprime)
        for r in model.candidates():
            if r >= domain.N:
                continue
            exact = exact_az(domain, r, model.qubit)
            approx = model.az(r)
            rows.append(
                {
                    "n": n,
                    "qprime": qprime,
                    "r": r,
                    "exact_az": exact,
                    "approx_az": approx,
                    "gap": abs(approx - exact),
                }
            )
    return rows


def quarter_gap(n: int, qprimes: list[int]) -> float:
    """
    Largest model gap over the candidates in the first quarter of the domain, r < N/4
    """
    quarter = (1 << n) // 4
    gaps = [row["gap"] for row in compare_rows(n, qprimes) if row["r"] < quarter]
    return max(gaps, default=0.0)
