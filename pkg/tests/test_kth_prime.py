from fractions import Fraction as F
from math import prod

import pytest

from divisor_density.exact_math import nth_primes
from divisor_density.kth_prime import (
    CertificateMissing,
    d_k_sequence,
    delta_table,
    kth_verdict,
    monotone_tail_certificate,
    transfer_instances,
    unimodality_verdict,
)
from divisor_density.period_oracle import kth_prime_period_counts

DELTA0 = [F(1, 2), F(1, 3), F(4, 15), F(8, 35), F(16, 77), F(192, 1001), F(3072, 17017),
          F(55296, 323323), F(110592, 676039), F(442368, 2800733)]


def fraction_recursion(i_max, r_max):
    """The recursion written directly on Fractions, column -1 first."""
    cols = [[F(1)] + [F(0)] * r_max]
    for p in nth_primes(i_max + 1):
        prev = cols[-1]
        cols.append([F(p - 1, p) * prev[r] + (F(1, p) * prev[r - 1] if r else 0) for r in range(r_max + 1)])
    return cols


def brute_delta(r, i):
    primes = nth_primes(i + 1)
    period = prod(primes)
    hits = sum(1 for x in range(1, period + 1) if sum(x % q == 0 for q in primes) == r)
    return F(hits, period)


def test_table_base_and_examples():
    t = delta_table(10)
    assert t.value(0, -1) == 1 and t.value(3, -1) == 0
    assert t.value(0, 0) == t.value(1, 0) == F(1, 2)
    assert all(t.value(r, 0) == 0 for r in range(2, 6))
    assert t.row(0)[:10] == DELTA0
    assert t.value(2, 4) == F(326, 1155)
    assert t.value(1, 1) == F(1, 2)


def test_table_matches_fraction_recursion():
    t = delta_table(60, 8)
    cols = fraction_recursion(60, 8)
    for i in range(-1, 61):
        assert t.column(i) == cols[i + 1]


@pytest.mark.parametrize("i", range(0, 6))
def test_table_matches_brute_force(i):
    t = delta_table(i)
    for r in range(i + 2):
        assert t.value(r, i) == brute_delta(r, i)


def test_columns_sum_to_one():
    t = delta_table(40, 42)
    for i in range(-1, 41):
        assert sum(t.column(i)[: i + 3]) == 1


def test_d_k_examples():
    assert d_k_sequence(1, 4).values == [F(1, 2), F(1, 6), F(1, 15), F(4, 105), F(8, 385)]
    d4 = dict(d_k_sequence(4, 10).entries)
    assert (d4[13], d4[17], d4[19]) == (F(31, 5005), F(206, 36465), F(1308, 230945))
    assert dict(d_k_sequence(5, 10).entries)[29] == F(35272, 35547765)
    with pytest.raises(ValueError):
        d_k_sequence(0, 5)


def test_d_k_entries_start_at_p_k_minus_1():
    seq = d_k_sequence(3, 10)
    assert seq.entries[0][0] == 5
    assert len(seq.entries) == 9
    assert d_k_sequence(3, 1).entries == []


@pytest.mark.parametrize("i", range(0, 7))
def test_d_k_matches_period_oracle(i):
    for k in range(1, i + 2):
        want = kth_prime_period_counts(k, i).ratio
        seq = dict(d_k_sequence(k, i).entries)
        assert seq[nth_primes(i + 1)[-1]] == want


def test_unimodality_verdicts():
    rep = unimodality_verdict(4, 10)
    assert not rep.unimodal
    v = kth_verdict(4, 10)
    assert v.witness_primes == (13, 17, 19)
    assert unimodality_verdict(1, 10).unimodal
    assert not unimodality_verdict(5, 10).unimodal


def test_tail_certificates():
    assert monotone_tail_certificate(0, 100) == 0
    assert monotone_tail_certificate(1, 100) == 1
    assert monotone_tail_certificate(2, 100) == 23
    assert monotone_tail_certificate(2, 20) is None


def test_certificate_missing():
    with pytest.raises(CertificateMissing):
        monotone_tail_certificate(3, 20)


def test_certificate_soundness():
    t = delta_table(2000, 4)
    for r in range(3):
        start = monotone_tail_certificate(r, 2000, t)
        row = [t.value(r, i) for i in range(-1, 2001)]
        # row[i + 1] is column i
        assert all(row[i + 1] <= row[i] for i in range(max(start, 0), 2001))
        if start > 0:
            assert row[start] > row[start - 1]


def test_transfer_instances_recorded():
    inst = transfer_instances(3, 30)
    assert inst, "delta_2 rises early, so premises exist"
    by_i = {x.i: x.conclusion_holds for x in inst}
    # delta_2(0) = 0 < delta_2(1) = 1/6 carries over
    assert by_i[1] is True
    # delta_2(1) = 1/6 < delta_2(2) = 7/30 but (1/6)/5 == (7/30)/7
    assert by_i[2] is False
