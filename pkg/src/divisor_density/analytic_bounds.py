"""Finite checks of the inequality chain bounding delta_0 from below:

    phi(L)/L = prod_{p<=m} (1 - 1/p)  ~  e^-gamma / ln m,   and  > 1/(2 ln m)
    delta_0(n, m) >= sum_{i<=n} phi(L/i)/L >= H_n phi(L)/L > ln n / (2 ln m)

Exact quantities stay rational. Whenever one is compared with a float
(logarithms, gamma), the float is widened by a few ulps in the unfavourable
direction, so rounding can only make a check fail, never pass spuriously.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .exact_math import (
    factored_div,
    factored_value,
    factorize,
    harmonic,
    lcm_range,
    primes_up_to,
    totient,
)
from .window_density import (
    DEFAULT_GUARD,
    Window,
    density_distribution,
    distribution_sequence,
    n_one_states,
)

EULER_GAMMA = 0.577215664901532860
_SLACK_ULPS = 8


def _widen_up(x: float) -> Fraction:
    for _ in range(_SLACK_ULPS):
        x = math.nextafter(x, math.inf)
    return Fraction(x)


def _widen_down(x: float) -> Fraction:
    for _ in range(_SLACK_ULPS):
        x = math.nextafter(x, -math.inf)
    return Fraction(x)


def exceeds(exact: Fraction, approx: float) -> bool:
    """exact > approx, counting as False whenever rounding could decide it."""
    return exact > _widen_up(approx)


@dataclass(frozen=True)
class BoundReport:
    m: int
    exact_value: Fraction
    bound_value: float
    satisfied: bool
    direction: str = ">"
    details: Optional[Dict[str, object]] = None


def mertens_check(m: int) -> BoundReport:
    """prod_{p<=m}(p-1)/p against 1/(2 ln m); details carry the ratio to e^-gamma/ln m."""
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    ps = primes_up_to(m)
    product = Fraction(math.prod(p - 1 for p in ps), math.prod(ps))
    bound = 1 / (2 * math.log(m))
    asymptote = math.exp(-EULER_GAMMA) / math.log(m)
    return BoundReport(
        m,
        product,
        bound,
        exceeds(product, bound),
        details={"ratio_to_mertens": float(product) / asymptote},
    )


def _holds(num: int, den: int, m: int) -> bool:
    a, b = _widen_down(2 * math.log(m)).as_integer_ratio()
    return a * num > b * den


def half_log_bound_failures(m_lo: int, m_hi: int) -> List[int]:
    """Every m in [m_lo, m_hi] where prod_{p<=m}(p-1)/p > 1/(2 ln m) does not hold.

    The product is constant between consecutive primes while the bound
    decreases, so within each prime gap the failures form a prefix; only
    that prefix is tested. Each test is exact against an outward-widened float.
    """
    if m_lo < 3 or m_hi < m_lo:
        raise ValueError(f"need 3 <= m_lo <= m_hi, got {m_lo}, {m_hi}")
    ps = primes_up_to(m_hi)
    num = den = 1
    idx = 0
    while idx < len(ps) and ps[idx] <= m_lo:
        num *= ps[idx] - 1
        den *= ps[idx]
        idx += 1
    failures = []
    m = m_lo
    while m <= m_hi:
        gap_end = ps[idx] - 1 if idx < len(ps) else m_hi
        # 2 ln(m) * num > den, with the logarithm widened downwards
        while m <= min(gap_end, m_hi) and not _holds(num, den, m):
            failures.append(m)
            m += 1
        m = gap_end + 1
        if idx < len(ps):
            num *= ps[idx] - 1
            den *= ps[idx]
            idx += 1
    return failures


def gcd_class_sum(n: int, m: int) -> Fraction:
    """sum_{i=1}^n phi(L/i) / L with L = lcm(n+1..m-1)."""
    L = lcm_range(n + 1, m - 1)
    Lv = factored_value(L)
    total = 0
    for i in range(1, n + 1):
        if Lv % i:
            raise ValueError(f"{i} does not divide lcm({n + 1}..{m - 1})")
        total += totient(factored_div(L, factorize(i) if i > 1 else {}))
    return Fraction(total, Lv)


def delta0_lower_bound_check(n: int, m: int, guard: int = DEFAULT_GUARD) -> BoundReport:
    """The full chain at one point; exact_value is delta_0(n, m)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if m <= n * n:
        raise ValueError(f"the gcd-class identity needs m > n^2, got n={n}, m={m}")
    d0 = density_distribution(Window(n, m), guard)[0]
    L = lcm_range(n + 1, m - 1)
    phi_ratio = Fraction(totient(L), factored_value(L))
    class_sum = gcd_class_sum(n, m)
    harmonic_term = harmonic(n) * phi_ratio
    bound = math.log(n) / (2 * math.log(m))
    chain = {
        "delta0_eq_class_sum": d0 == class_sum,
        "class_sum_ge_harmonic": class_sum >= harmonic_term,
        "harmonic_gt_bound": exceeds(harmonic_term, bound),
    }
    return BoundReport(
        m,
        d0,
        bound,
        all(chain.values()) and exceeds(d0, bound),
        details={
            "n": n,
            "class_sum": class_sum,
            "harmonic_term": harmonic_term,
            **chain,
        },
    )


def crossover_search(
    n: int,
    m_max: int,
    guard: int = DEFAULT_GUARD,
    m_min: Optional[int] = None,
    after_overtake: bool = False,
) -> Optional[int]:
    """Smallest m in [m_min, m_max] with delta_0(n, m) > delta_1(n, m).

    With ``after_overtake`` the search first waits for an m where
    delta_1 >= delta_0 and reports the first strict reversal after it.
    For n = 1 the dedicated recursion is used (m_min defaults to 3).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    start = (n + 2 if n > 1 else 3) if m_min is None else m_min
    armed = not after_overtake
    if n == 1:
        pairs = ((s.m, s.phi_over_l, s.a_over_l) for s in n_one_states(m_max) if s.m >= start)
    else:
        pairs = ((d.window.m, d[0], d[1]) for d in distribution_sequence(n, m_max, guard, start))
    for m, d0, d1 in pairs:
        if armed and d0 > d1:
            return m
        if d1 >= d0:
            armed = True
    return None
