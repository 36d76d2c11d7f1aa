"""
Bit-string arithmetic over the first register: beta sets, complements and interval ranges
"""

from collections.abc import Iterator
from fractions import Fraction

import numpy as np

from qpf_rdm.models.domain import BitString, Domain, IntervalRange
from qpf_rdm.exceptions import DomainArgumentError


def insert_zero_bit(counter: np.ndarray | int, q: int):
    """
    Spreads an (n-1)-bit counter into n bits, leaving a zero at position q
    """
    low_mask = (1 << q) - 1
    return ((counter >> q) << (q + 1)) | (counter & low_mask)


def beta_indices(domain: Domain, q: int) -> np.ndarray:
    """
    All integers of [0, N) with bit q clear, ascending, as an int64 array
    """
    domain.check_qubit(q)
    counter = np.arange(domain.N >> 1, dtype=np.int64)
    return insert_zero_bit(counter, q)


def beta_members(domain: Domain, q: int) -> Iterator[BitString]:
    domain.check_qubit(q)
    return (
        BitString(value=insert_zero_bit(counter, q), n=domain.n)
        for counter in range(domain.N >> 1)
    )


def complement_string(b: BitString, q: int) -> BitString:
    """
    xi(b): b with bit q raised from 0 to 1
    """
    if not 0 <= q < b.n:
        raise DomainArgumentError(f"qubit {q} outside [0, {b.n})")
    if b.bit(q):
        raise DomainArgumentError(f"bit {q} of {b.value} is already set")

    return BitString(value=b.value | (1 << q), n=b.n)


def beta_range(domain: Domain, q: int) -> IntervalRange:
    """
    Real intervals spanned by the strings of beta_q
    With q' = n-1-q there are 2^q' intervals of width N/2^(q'+1), spaced N/2^q' apart
    """
    domain.check_qubit(q)
    qprime = domain.n - 1 - q
    spacing = domain.N >> qprime
    width = spacing >> 1

    intervals = [
        (Fraction(start), Fraction(start + width))
        for start in range(0, domain.N, spacing)
    ]
    return IntervalRange(intervals=intervals)
