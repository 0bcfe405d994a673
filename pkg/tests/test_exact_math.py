import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divisor_density.exact_math import (
    binomial,
    factored_mul,
    factored_value,
    factorize,
    harmonic,
    is_prime,
    lcm_range,
    nth_primes,
    prime_product_ratio,
    primes_up_to,
    totient,
    valuation,
)


def test_primes_up_to():
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_up_to(1) == []
    assert primes_up_to(0) == []
    p31 = primes_up_to(31)
    assert len(p31) == 11 and p31[-1] == 31


def test_primes_match_trial_division():
    naive = [x for x in range(2, 2000) if all(x % d for d in range(2, math.isqrt(x) + 1))]
    assert primes_up_to(1999) == naive
    assert nth_primes(len(naive)) == naive


def test_prime_table_grows():
    big = primes_up_to(50_000)
    assert big[-1] == 49999
    assert primes_up_to(100) == primes_up_to(100)
    assert is_prime(49999) and not is_prime(49997)


def test_primes_negative_rejected():
    with pytest.raises(ValueError):
        primes_up_to(-1)


@pytest.mark.parametrize(
    "a, b, expected",
    [(4, 10, {2: 3, 3: 2, 5: 1, 7: 1}), (1, 2, {2: 1}), (5, 5, {5: 1})],
)
def test_lcm_range_examples(a, b, expected):
    assert lcm_range(a, b) == expected


def test_lcm_range_value():
    assert factored_value(lcm_range(4, 10)) == 2520
    assert factored_value(lcm_range(1, 1)) == 1


@given(st.integers(1, 60), st.integers(0, 30))
def test_lcm_range_matches_reduce(a, extra):
    b = a + extra
    want = 1
    for x in range(a, b + 1):
        want = want * x // math.gcd(want, x)
    assert factored_value(lcm_range(a, b)) == want


def test_lcm_range_zero_rejected():
    with pytest.raises(ValueError):
        lcm_range(0, 5)


def test_totient_examples():
    assert totient({2: 3, 3: 2, 5: 1, 7: 1}) == 576
    assert totient({}) == 1
    assert totient({2: 1}) == 1


@given(st.integers(1, 5000))
def test_totient_matches_gcd_count(x):
    f = factorize(x) if x > 1 else {}
    assert totient(f) == sum(math.gcd(x, k) == 1 for k in range(1, x + 1))


@settings(max_examples=200)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_totient_multiplicative(a, b):
    g = math.gcd(a, b)
    a //= g
    b //= g
    if math.gcd(a, b) != 1:
        return
    fa = factorize(a) if a > 1 else {}
    fb = factorize(b) if b > 1 else {}
    assert totient(factored_mul(fa, fb)) == totient(fa) * totient(fb)


@pytest.mark.parametrize("x", [2, 3, 10, 30, 97, 100, 1000])
def test_prime_product_is_totient_ratio(x):
    L = lcm_range(1, x)
    assert prime_product_ratio(x) == Fraction(totient(L), factored_value(L))


def test_harmonic_examples():
    assert harmonic(4) == Fraction(25, 12)
    assert harmonic(1) == 1
    assert harmonic(2) == Fraction(3, 2)
    with pytest.raises(ValueError):
        harmonic(0)


def test_harmonic_differences():
    prev = Fraction(0)
    for n in range(1, 1001):
        h = harmonic(n)
        assert h - prev == Fraction(1, n)
        assert float(h) > math.log(n)
        prev = h


def test_binomial():
    assert binomial(5, 2) == 10
    assert binomial(7, 0) == 1
    assert binomial(6, 3) == 20
    with pytest.raises(ValueError):
        binomial(3, 4)


def test_valuation():
    assert valuation(48, 2) == 4
    assert valuation(7, 2) == 0
    assert valuation(9, 3) == 2
    with pytest.raises(ValueError):
        valuation(0, 2)
    with pytest.raises(ValueError):
        valuation(12, 4)


@given(st.integers(2, 10**7))
def test_factorize_roundtrip(x):
    f = factorize(x)
    assert factored_value(f) == x
    assert all(is_prime(q) for q in f)
