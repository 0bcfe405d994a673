"""Integer and rational substrate: primes, lcm/totient over factored naturals,
harmonic numbers, binomials and valuations.

Naturals are plain Python ints and ratios are ``fractions.Fraction`` (always
kept in lowest terms). A factored natural is a ``dict`` mapping prime to
exponent; the empty dict stands for 1.
"""

from __future__ import annotations

import bisect
import math
import threading
from fractions import Fraction
from typing import Dict, List

Factored = Dict[int, int]

_prime_lock = threading.Lock()
_sieve_limit = 1
_primes: List[int] = []


def _sieve(limit: int) -> List[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = bytes(len(range(q * q, limit + 1, q)))
    return [i for i, f in enumerate(flags) if f]


def _ensure_primes(x: int) -> List[int]:
    """Grow the shared table so that it covers every prime <= x."""
    global _sieve_limit, _primes
    if x <= _sieve_limit:
        return _primes
    with _prime_lock:
        if x > _sieve_limit:
            limit = max(x, 2 * _sieve_limit)
            table = _sieve(limit)
            # publish the list before the limit so readers never see a short table
            _primes = table
            _sieve_limit = limit
    return _primes


def primes_up_to(x: int) -> List[int]:
    """All primes <= x in ascending order."""
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    table = _ensure_primes(x)
    return table[: bisect.bisect_right(table, x)]


def nth_primes(count: int) -> List[int]:
    """The first ``count`` primes p_0=2, p_1=3, ..."""
    if count <= 0:
        return []
    # p_k < k (ln k + ln ln k) for k >= 6
    bound = 15 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    table = _ensure_primes(bound)
    return table[:count]


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x <= _sieve_limit:
        i = bisect.bisect_left(_primes, x)
        return i < len(_primes) and _primes[i] == x
    for q in primes_up_to(math.isqrt(x)):
        if x % q == 0:
            return False
    return True


def factorize(x: int) -> Factored:
    """Trial division against the prime table; meant for the small numbers in a window."""
    if x < 1:
        raise ValueError(f"cannot factor {x}")
    out: Factored = {}
    for q in primes_up_to(math.isqrt(x)):
        if q * q > x:
            break
        while x % q == 0:
            out[q] = out.get(q, 0) + 1
            x //= q
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def prime_power_base(x: int) -> tuple[int, int] | None:
    """Return (q, e) if x = q**e with q prime and e >= 1, else None."""
    if x < 2:
        return None
    f = factorize(x)
    if len(f) != 1:
        return None
    ((q, e),) = f.items()
    return q, e


def valuation(d: int, q: int) -> int:
    """Largest e with q**e | d."""
    if d < 1:
        raise ValueError(f"valuation needs d >= 1, got {d}")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    e = 0
    while d % q == 0:
        d //= q
        e += 1
    return e


def lcm_range(a: int, b: int) -> Factored:
    """Factored lcm(a, a+1, ..., b)."""
    if a < 1:
        raise ValueError("lcm over a range containing 0 is undefined")
    if b < a:
        raise ValueError(f"empty range [{a}, {b}]")
    out: Factored = {}
    for q in primes_up_to(b):
        # largest power of q that still has a multiple in [a, b]
        e, qe = 0, q
        while qe <= b and (b // qe) * qe >= a:
            e += 1
            qe *= q
        if e:
            out[q] = e
    return out


def factored_value(f: Factored) -> int:
    return math.prod(q**e for q, e in f.items())


def factored_mul(a: Factored, b: Factored) -> Factored:
    out = dict(a)
    for q, e in b.items():
        out[q] = out.get(q, 0) + e
    return out


def factored_div(a: Factored, b: Factored) -> Factored:
    """a / b, requiring b | a."""
    out = dict(a)
    for q, e in b.items():
        have = out.get(q, 0)
        if have < e:
            raise ValueError(f"{factored_value(b)} does not divide {factored_value(a)}")
        if have == e:
            del out[q]
        else:
            out[q] = have - e
    return out


def totient(f: Factored) -> int:
    """Euler's phi from the factorization: prod q^(e-1) (q-1)."""
    return math.prod(q ** (e - 1) * (q - 1) for q, e in f.items())


def harmonic(n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"harmonic number needs n >= 1, got {n}")
    # common denominator lcm(1..n) keeps this a single normalization
    den = factored_value(lcm_range(1, n))
    return Fraction(sum(den // i for i in range(1, n + 1)), den)


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"binomial needs 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


def prime_product_ratio(x: int) -> Fraction:
    """prod_{q <= x} (q-1)/q exactly."""
    ps = primes_up_to(x)
    return Fraction(math.prod(q - 1 for q in ps), math.prod(ps))
