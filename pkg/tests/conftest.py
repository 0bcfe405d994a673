import math
from collections import Counter
from fractions import Fraction
from functools import reduce

import pytest


def lcm_all(xs):
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def brute_distribution(divisors):
    """Pure-python tally of #{d : d | x} over one period; tiny periods only."""
    divisors = list(divisors)
    period = lcm_all(divisors)
    assert period <= 2_000_000, period
    tally = Counter(sum(x % d == 0 for d in divisors) for x in range(1, period + 1))
    return {r: Fraction(c, period) for r, c in tally.items()}


def brute_window(n, m):
    return brute_distribution(range(n + 1, m))


@pytest.fixture
def brute():
    return brute_window
