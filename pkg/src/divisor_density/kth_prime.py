"""Densities tied to the k-th smallest prime factor.

delta_r(i) is the density of integers with exactly r prime divisors among
p_0 = 2, ..., p_i. Column i = -1 (no primes at all) is the base:
delta_0(-1) = 1. Adding p_i splits each class into p_i - 1 residues that
avoid p_i and one that hits it:

    delta_r(i) = (p_i - 1)/p_i * delta_r(i-1) + 1/p_i * delta_{r-1}(i-1)

and the density of integers whose k-th prime is p_i is
d_k(p_i) = delta_{k-1}(i-1) / p_i.

Internally every column is kept as integer numerators over the primorial
P_i = p_0 * ... * p_i, so the recursion is pure integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .exact_math import nth_primes
from .sequence_analysis import ExtremaReport, local_extrema

DEFAULT_R_MAX = 21


class CertificateMissing(RuntimeError):
    pass


@dataclass(frozen=True)
class DeltaTable:
    i_max: int
    r_max: int
    primes: Tuple[int, ...]
    # numerators[r][i + 1] over denominators[i + 1]; index 0 is column i = -1
    numerators: Tuple[Tuple[int, ...], ...]
    denominators: Tuple[int, ...]

    def value(self, r: int, i: int) -> Fraction:
        if not -1 <= i <= self.i_max:
            raise IndexError(f"column {i} outside [-1, {self.i_max}]")
        if r < 0 or r > self.r_max:
            if r < 0:
                return Fraction(0)
            raise IndexError(f"row {r} beyond r_max={self.r_max}")
        return Fraction(self.numerators[r][i + 1], self.denominators[i + 1])

    def row(self, r: int, start: int = 0) -> List[Fraction]:
        return [self.value(r, i) for i in range(start, self.i_max + 1)]

    def column(self, i: int) -> List[Fraction]:
        return [self.value(r, i) for r in range(self.r_max + 1)]

    def step_le(self, r: int, i: int) -> bool:
        """delta_r(i) <= delta_r(i-1), compared on integer numerators."""
        p = self.primes[i]
        return self.numerators[r][i + 1] <= p * self.numerators[r][i]


def delta_table(i_max: int, r_max: int = DEFAULT_R_MAX) -> DeltaTable:
    return _delta_table(i_max, r_max)


@lru_cache(maxsize=8)
def _delta_table(i_max: int, r_max: int) -> DeltaTable:
    if i_max < -1 or r_max < 0:
        raise ValueError(f"need i_max >= -1 and r_max >= 0, got {i_max}, {r_max}")
    primes = tuple(nth_primes(i_max + 1))
    cols = [[1] + [0] * r_max]
    dens = [1]
    for p in primes:
        prev = cols[-1]
        cols.append([(p - 1) * prev[0]] + [(p - 1) * prev[r] + prev[r - 1] for r in range(1, r_max + 1)])
        dens.append(dens[-1] * p)
    rows = tuple(tuple(col[r] for col in cols) for r in range(r_max + 1))
    return DeltaTable(i_max, r_max, primes, rows, tuple(dens))


@dataclass(frozen=True)
class KthPrimeSequence:
    k: int
    entries: List[Tuple[int, Fraction]]  # (p_i, d_k(p_i)) for i = k-1..i_max

    @property
    def values(self) -> List[Fraction]:
        return [v for _, v in self.entries]


def d_k_sequence(k: int, i_max: int, table: Optional[DeltaTable] = None) -> KthPrimeSequence:
    """d_k(p_i) for i = k-1..i_max; earlier entries are identically zero."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if table is None or table.i_max < i_max or table.r_max < k - 1:
        table = delta_table(i_max, max(DEFAULT_R_MAX, k - 1))
    entries = []
    for i in range(k - 1, i_max + 1):
        p = table.primes[i]
        # delta_{k-1}(i-1) / p_i shares the denominator P_i
        entries.append((p, Fraction(table.numerators[k - 1][i], table.denominators[i + 1])))
    return KthPrimeSequence(k, entries)


def strip_leading_zeros(values: List[Fraction]) -> Tuple[int, List[Fraction]]:
    lead = 0
    while lead < len(values) and values[lead] == 0:
        lead += 1
    return lead, values[lead:]


@dataclass(frozen=True)
class KthVerdict:
    k: int
    offset: int  # prime index of the first reported value
    primes: List[int]
    report: ExtremaReport

    @property
    def witness_primes(self) -> Optional[Tuple[int, int, int]]:
        if self.report.witness is None:
            return None
        return tuple(self.primes[j] for j in self.report.witness)


def kth_verdict(k: int, i_max: int, table: Optional[DeltaTable] = None) -> KthVerdict:
    seq = d_k_sequence(k, i_max, table)
    lead, values = strip_leading_zeros(seq.values)
    if not values:
        raise ValueError(f"d_{k} has no non-zero values up to i_max={i_max}")
    primes = [p for p, _ in seq.entries[lead:]]
    return KthVerdict(k, k - 1 + lead, primes, local_extrema(values))


def unimodality_verdict(k: int, i_max: int) -> ExtremaReport:
    return kth_verdict(k, i_max).report


def monotone_tail_certificate(
    r: int, i_max: int, table: Optional[DeltaTable] = None
) -> Optional[int]:
    """Smallest i' with delta_r(i) <= delta_r(i-1) for every i >= i', proven beyond i_max.

    The step into column i has the sign of delta_{r-1}(i-1) - delta_r(i-1), and
    delta_r(i) lies between delta_r(i-1) and delta_{r-1}(i-1). So once
    delta_r(j-1) >= delta_{r-1}(j-1) at some j past the certificate of r-1,
    every later step is a non-increase. Returns None if no such j <= i_max.
    """
    if table is None or table.i_max < i_max or table.r_max < r:
        table = delta_table(i_max, max(DEFAULT_R_MAX, r))
    if r == 0:
        # every step multiplies by (p-1)/p
        return 0
    prior = monotone_tail_certificate(r - 1, i_max, table)
    if prior is None:
        raise CertificateMissing(f"no tail certificate for r={r - 1} within i_max={i_max}")
    num_r, num_lo = table.numerators[r], table.numerators[r - 1]
    anchor = None
    for j in range(max(prior, 0), i_max + 1):
        # compare delta_r(j-1) and delta_{r-1}(j-1); same denominator
        if num_r[j] >= num_lo[j]:
            anchor = j
            break
    if anchor is None:
        return None
    # extend backwards over computed non-increasing steps
    while anchor > 0 and table.step_le(r, anchor - 1):
        anchor -= 1
    return anchor


@dataclass(frozen=True)
class TransferInstance:
    k: int
    i: int
    conclusion_holds: bool


def transfer_instances(k: int, i_max: int, table: Optional[DeltaTable] = None) -> List[TransferInstance]:
    """Check, wherever delta_{k-1}(i-1) < delta_{k-1}(i), whether also
    delta_{k-1}(i-1)/p_i < delta_{k-1}(i)/p_{i+1}.

    The second inequality does not follow from the first in general, so each
    premise instance is recorded with the outcome.
    """
    if table is None or table.i_max < i_max + 1 or table.r_max < k - 1:
        table = delta_table(i_max + 1, max(DEFAULT_R_MAX, k - 1))
    out = []
    for i in range(0, i_max + 1):
        prev, cur = table.value(k - 1, i - 1), table.value(k - 1, i)
        if prev < cur:
            holds = prev / table.primes[i] < cur / table.primes[i + 1]
            out.append(TransferInstance(k, i, holds))
    return out
