"""Brute-force ground truth by counting over a full period.

Every divisibility-defined density here is periodic with period
L = lcm of the defining moduli, so tallying x = 1..L gives exact values.
Counting marks multiples of each divisor into a uint8 array, one block at a
time, so memory stays bounded for large L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence

import numpy as np

from .exact_math import factored_value, is_prime, lcm_range, nth_primes
from .window_density import Window

DEFAULT_PERIOD_LIMIT = 10**8
BLOCK = 1 << 22


class PeriodTooLarge(RuntimeError):
    def __init__(self, period: int, limit: int):
        self.period = period
        self.limit = limit
        super().__init__(f"period {period} exceeds limit {limit}")


@dataclass(frozen=True)
class PeriodCounts:
    window: Window
    period: int
    counts: Dict[int, int]

    def ratio(self, r: int) -> Fraction:
        return Fraction(self.counts.get(r, 0), self.period)


def _tally(divisors: Sequence[int], start: int, stop: int) -> np.ndarray:
    """bincount of #{d : d | x} for x in [start, stop)."""
    hits = np.zeros(stop - start, dtype=np.uint8)
    for d in divisors:
        first = -start % d  # offset of the first multiple of d that is >= start
        hits[first::d] += 1
    return np.bincount(hits, minlength=len(divisors) + 1)


def _count_range(divisors: Sequence[int], n_max: int) -> Dict[int, int]:
    if len(divisors) > 255:
        raise ValueError("uint8 tally supports at most 255 divisors")
    total = np.zeros(len(divisors) + 1, dtype=np.int64)
    for lo in range(1, n_max + 1, BLOCK):
        hi = min(lo + BLOCK, n_max + 1)
        total += _tally(divisors, lo, hi)
    return {r: int(c) for r, c in enumerate(total) if c}


def window_period(w: Window) -> int:
    return factored_value(lcm_range(w.n + 1, w.m - 1))


def lone_primes(w: Window) -> List[int]:
    """Primes q in the window with 2q >= m: q is the only element q divides."""
    return [q for q in w.divisors if 2 * q >= w.m and is_prime(q)]


def period_counts(
    w: Window, limit: int = DEFAULT_PERIOD_LIMIT, fold_lone_primes: bool = False
) -> PeriodCounts:
    """Tally r(x) over one full period.

    With ``fold_lone_primes`` the scan covers only L / prod(lone primes); by
    CRT each lone prime q hits exactly one residue in q, so the full-period
    counts follow as c'[r] = (q-1) c[r] + c[r-1]. ``limit`` bounds the
    scanned length.
    """
    period = window_period(w)
    lone = lone_primes(w) if fold_lone_primes else []
    scanned = period // math.prod(lone)
    if scanned > limit:
        raise PeriodTooLarge(scanned, limit)
    rest = [d for d in w.divisors if d not in lone]
    counts = _count_range(rest, scanned)
    for q in lone:
        top = max(counts) + 1
        counts = {r: (q - 1) * counts.get(r, 0) + counts.get(r - 1, 0) for r in range(top + 1)}
    return PeriodCounts(w, period, {r: c for r, c in counts.items() if c})


def empirical_counts(w: Window, N: int) -> Dict[int, int]:
    """Counts of r(x) over x = 1..N (not necessarily a whole period)."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return _count_range(list(w.divisors), N)


@dataclass(frozen=True)
class KthPrimeCount:
    period: int
    count: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.count, self.period)


def kth_prime_period_counts(
    k: int, i: int, limit: int = DEFAULT_PERIOD_LIMIT
) -> KthPrimeCount:
    """Count x in [1, p_0*...*p_i] whose k-th smallest prime among p_0..p_i is p_i.

    Only multiples x = p_i*y need checking, and p_j | x iff p_j | y for j < i,
    so the scan runs over y in [1, p_0*...*p_{i-1}].
    """
    if k < 1 or i < 0:
        raise ValueError(f"need k >= 1 and i >= 0, got k={k}, i={i}")
    primes = nth_primes(i + 1)
    period = math.prod(primes)
    if period > limit:
        raise PeriodTooLarge(period, limit)
    small, top = primes[:-1], primes[-1]
    span = period // top
    count = 0
    for lo in range(1, span + 1, BLOCK):
        hi = min(lo + BLOCK, span + 1)
        hits = np.zeros(hi - lo, dtype=np.uint8)
        for q in small:
            hits[-lo % q :: q] += 1
        count += int(np.count_nonzero(hits == k - 1))
    return KthPrimeCount(period, count)
