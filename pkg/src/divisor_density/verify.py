"""Verification suites behind ``divisor-density verify``.

Each suite returns a dict of details and raises ``SuiteFailure`` on the first
mismatch. ``run_suites`` times them and assembles a JSON-ready summary.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import golden
from .analytic_bounds import (
    delta0_lower_bound_check,
    gcd_class_sum,
    half_log_bound_failures,
    mertens_check,
)
from .exact_math import is_prime, primes_up_to
from .kth_prime import (
    d_k_sequence,
    delta_table,
    kth_verdict,
    monotone_tail_certificate,
)
from .period_oracle import kth_prime_period_counts, period_counts, window_period
from .sequence_analysis import is_unimodal_by_runs, local_extrema
from .window_density import (
    DEFAULT_GUARD,
    Window,
    density_distribution,
    extend_with_prime,
    inclusion_exclusion_delta,
    n_one_states,
    scan_for_witness,
    two_p_check,
)


class SuiteFailure(AssertionError):
    pass


def check(cond: bool, message: str) -> None:
    if not cond:
        raise SuiteFailure(message)


@dataclass(frozen=True)
class Profile:
    name: str
    n_one_m_max: int
    sweep_n_max: int
    sweep_width_max: int
    kth_i_max: int
    kth_oracle_i_max: int
    two_p_n_max: int
    two_p_p_max: int
    small_n_max: int


PROFILES = {
    "quick": Profile("quick", 10**3, 4, 8, 200, 6, 5, 23, 8),
    "full": Profile("full", 10**4, 8, 12, 1000, 8, 10, 50, 20),
}


def suite_intro_values(profile: Profile, guard: int) -> Dict:
    for (n, m, r), want in golden.INTRO_VALUES.items():
        w = Window(n, m)
        got = {
            "profile": density_distribution(w, guard)[r],
            "inclusion_exclusion": inclusion_exclusion_delta(w, r),
            "period": period_counts(w).ratio(r),
        }
        for engine, value in got.items():
            check(value == want, f"delta_{r}({n},{m}) via {engine} = {value}, expected {want}")
    return {"values": len(golden.INTRO_VALUES)}


def suite_golden_tables(profile: Profile, guard: int) -> Dict:
    table = delta_table(10)
    for r, row in golden.DELTA_ROWS.items():
        got = table.row(r)[:10]
        check(got == row, f"delta_{r} row mismatch: {got} != {row}")
    for k, (first, row) in golden.D_ROWS.items():
        got = [table.value(k - 1, i - 1) / table.primes[i] for i in range(first, first + len(row))]
        check(got == row, f"d_{k} row mismatch: {got} != {row}")
        nonzero = [v for v in row if v]
        check(d_k_sequence(k, 10, table).values[-len(nonzero):] == nonzero, f"d_{k}_sequence disagrees")
    entries = sum(len(r) for r in golden.DELTA_ROWS.values()) + sum(len(r) for _, r in golden.D_ROWS.values())
    return {"entries": entries}


def suite_engine_agreement(profile: Profile, guard: int) -> Dict:
    checked = 0
    for n in range(1, profile.sweep_n_max + 1):
        for m in range(n + 2, n + 2 + profile.sweep_width_max):
            w = Window(n, m)
            if window_period(w) > 10**7:
                continue
            dist = density_distribution(w, guard)
            plain = density_distribution(w, guard, marginalize=False)
            oracle = period_counts(w)
            check(dist.total() == 1, f"distribution of ({n},{m}) sums to {dist.total()}")
            check(dist.probs == plain.probs, f"marginalization changed ({n},{m})")
            for r in range(w.width + 1):
                ie = inclusion_exclusion_delta(w, r)
                check(
                    dist[r] == ie == oracle.ratio(r),
                    f"engines disagree on delta_{r}({n},{m}): {dist[r]}, {ie}, {oracle.ratio(r)}",
                )
            checked += 1
    return {"windows": checked}


def suite_n_one_monotone(profile: Profile, guard: int) -> Dict:
    prev = None
    for s in n_one_states(profile.n_one_m_max):
        check(s.a_over_l >= s.phi_over_l, f"A < phi(L) at m={s.m}")
        if prev is not None:
            check(s.a_over_l <= prev.a_over_l, f"delta_1(1,m) increases at m={s.m}")
        prev = s
    oracle_checked = 0
    for s in n_one_states(30):
        oracle = period_counts(Window(1, s.m), fold_lone_primes=True)
        check(oracle.ratio(1) == s.a_over_l, f"n=1 recursion != oracle at m={s.m} (r=1)")
        check(oracle.ratio(0) == s.phi_over_l, f"n=1 recursion != oracle at m={s.m} (r=0)")
        oracle_checked += 1
    return {"m_max": profile.n_one_m_max, "oracle_points": oracle_checked}


def suite_step_identities(profile: Profile, guard: int) -> Dict:
    prev = None
    kinds = {"prime": 0, "square": 0, "other": 0}
    for s in n_one_states(profile.n_one_m_max):
        check(s.a_over_phi == s.a_over_l / s.phi_over_l, f"A/phi(L) drifted at m={s.m}")
        if prev is not None:
            d = prev.m
            change = s.a_over_phi - prev.a_over_phi
            if is_prime(d):
                check(change == Fraction(1, d - 1), f"prime step {d}: change {change}")
                kinds["prime"] += 1
            elif _is_prime_square(d):
                p = math.isqrt(d)
                check(change == -Fraction(1, p * (p - 1)), f"square step {d}: change {change}")
                kinds["square"] += 1
            else:
                check(change == 0, f"step {d}: change {change}")
                kinds["other"] += 1
        prev = s
    return kinds


def _is_prime_square(x: int) -> bool:
    r = math.isqrt(x)
    return r * r == x and is_prime(r)


def suite_prime_and_two_p(profile: Profile, guard: int) -> Dict:
    pairs = 0
    for n in range(1, profile.two_p_n_max + 1):
        for p in primes_up_to(profile.two_p_p_max):
            if p <= n:
                continue
            base = density_distribution(Window(n, p), guard) if p >= n + 2 else None
            if base is not None:
                stepped = extend_with_prime(base, p)
                direct = density_distribution(Window(n, p + 1), guard)
                check(stepped.probs == direct.probs, f"prime step ({n},{p}) disagrees")
            res = two_p_check(n, p, guard)
            if n == 1 and p > 2:
                # 2 and p both lie in the window, so 2p adds nothing
                before = density_distribution(Window(1, 2 * p), guard)[1]
                after = density_distribution(Window(1, 2 * p + 1), guard)[1]
                check(not res.strict_drop and before == after, f"n=1, p={p}: expected no change")
            else:
                check(res.strict_drop, f"delta_1({n},{2 * p + 1}) does not drop")
            check(res.sole_2p_density == 0, f"sole-2p density {res.sole_2p_density} for ({n},{p})")
            pairs += 1
    return {"pairs": pairs}


def suite_small_n(profile: Profile, guard: int) -> Dict:
    witnesses = {}
    for n in range(2, profile.small_n_max + 1):
        scan = scan_for_witness(n, 1, guard)
        check(scan.witness_m is not None, f"no witness for n={n} before m={scan.frontier}")
        values = [v for _, v in scan.sequence]
        rep = local_extrema(values)
        check(len(rep.maxima) >= 2, f"fewer than two maxima runs for n={n}")
        check(is_unimodal_by_runs(values) == rep.unimodal, f"run/witness verdicts differ for n={n}")
        witnesses[n] = list(scan.witness_m)
    check(witnesses.get(3) == [6, 7, 8], f"n=3 witness {witnesses.get(3)}")
    return {"witness_m": witnesses}


def suite_kth_verdicts(profile: Profile, guard: int) -> Dict:
    i_max = profile.kth_i_max
    table = delta_table(i_max)
    out = {}
    for k in range(1, 21):
        v = kth_verdict(k, i_max, table)
        if k <= 3:
            check(v.report.unimodal, f"d_{k} not unimodal up to i={i_max}")
        else:
            check(not v.report.unimodal, f"d_{k} unimodal up to i={i_max}")
            out[k] = v.witness_primes
    k4 = kth_verdict(4, 10, table).report.witness
    vals = d_k_sequence(4, 10, table).values
    check(tuple(vals[j] for j in k4) == golden.K4_WITNESS, "k=4 witness differs from the table")
    cert = monotone_tail_certificate(2, i_max, table)
    check(cert == golden.DELTA2_TAIL_START, f"delta_2 tail certificate {cert}")
    return {"i_max": i_max, "witness_primes": out, "delta2_tail": cert}


def suite_kth_oracle(profile: Profile, guard: int) -> Dict:
    table = delta_table(profile.kth_oracle_i_max)
    checked = 0
    for i in range(profile.kth_oracle_i_max + 1):
        for k in range(1, i + 2):
            got = kth_prime_period_counts(k, i, limit=10**9).ratio
            want = table.value(k - 1, i - 1) / table.primes[i]
            check(got == want, f"d_{k}(p_{i}) = {want} but oracle gives {got}")
            checked += 1
    return {"pairs": checked}


def suite_bounds(profile: Profile, guard: int) -> Dict:
    rep = mertens_check(10**5)
    ratio = rep.details["ratio_to_mertens"]
    check(0.95 <= ratio <= 1.05, f"Mertens ratio {ratio} at 1e5")
    fails = half_log_bound_failures(3, 10**5)
    check(fails == golden.HALF_LOG_EXCEPTIONS, f"half-log failures {fails}")
    identity_points = 0
    for n in range(2, 5):
        for m in range(n * n + 1, 20):
            w = Window(n, m)
            if window_period(w) > 10**8:
                continue
            check(
                gcd_class_sum(n, m) == period_counts(w).ratio(0),
                f"gcd-class identity fails at ({n},{m})",
            )
            identity_points += 1
    chain = delta0_lower_bound_check(3, 20, guard)
    check(chain.satisfied, f"lower-bound chain fails at (3,20): {chain.details}")
    return {"mertens_ratio": ratio, "half_log_exceptions": fails, "identity_points": identity_points}


SUITES: Dict[str, Callable[[Profile, int], Dict]] = {
    "intro_values": suite_intro_values,
    "golden_tables": suite_golden_tables,
    "engine_agreement": suite_engine_agreement,
    "n_one_monotone": suite_n_one_monotone,
    "step_identities": suite_step_identities,
    "prime_and_two_p": suite_prime_and_two_p,
    "small_n_extrema": suite_small_n,
    "kth_verdicts": suite_kth_verdicts,
    "kth_oracle": suite_kth_oracle,
    "bounds": suite_bounds,
}


def run_suites(profile_name: str, guard: int = DEFAULT_GUARD, only: Optional[List[str]] = None) -> Dict:
    profile = PROFILES[profile_name]
    results = []
    for name, suite in SUITES.items():
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            detail = suite(profile, guard)
            status, error = "pass", None
        except SuiteFailure as exc:
            detail, status, error = {}, "fail", str(exc)
        entry = {"name": name, "status": status, "seconds": round(time.perf_counter() - t0, 3)}
        if error:
            entry["error"] = error
        entry["detail"] = _jsonable(detail)
        results.append(entry)
    return {
        "profile": profile_name,
        "passed": all(r["status"] == "pass" for r in results),
        "suites": results,
    }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj
