"""Exact densities delta_r(n, m) of integers with exactly r divisors in the
open window (n, m) = {n+1, ..., m-1}.

Three independent routes are provided:

* capped-valuation profile enumeration (``density_distribution``), the
  general engine;
* generalized inclusion-exclusion over subsets of the window
  (``inclusion_exclusion_delta``), a narrow-window oracle;
* incremental prime extension (``extend_with_prime``), used by
  ``delta_sequence`` whenever the newly added divisor is a prime.

The n = 1 case additionally has its own recursion on the triple
(A/L, phi(L)/L, A/phi(L)), see ``n_one_step``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exact_math import (
    binomial,
    factored_value,
    factorize,
    is_prime,
    lcm_range,
    prime_power_base,
)
from .sequence_analysis import first_violation

DEFAULT_GUARD = 10**7
IE_MAX_WIDTH = 20


class InvalidWindow(ValueError):
    pass


class GuardExceeded(RuntimeError):
    """The profile state space is larger than the configured guard."""

    def __init__(self, size: int, guard: int, m: Optional[int] = None):
        self.size = size
        self.guard = guard
        self.m = m
        where = f" at m={m}" if m is not None else ""
        super().__init__(f"profile state space {size} exceeds guard {guard}{where}")


class WindowTooWide(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidWindow(f"n must be >= 1, got {self.n}")
        if self.m < self.n + 2:
            raise InvalidWindow(f"window ({self.n},{self.m}) is empty; need m >= n+2")

    @property
    def divisors(self) -> range:
        return range(self.n + 1, self.m)

    @property
    def width(self) -> int:
        return self.m - self.n - 1


@dataclass(frozen=True)
class PrimeCap:
    q: int
    cap: int


@dataclass(frozen=True)
class DensityDistribution:
    """delta_r for every r at once. Zero entries are not stored."""

    window: Window
    probs: Mapping[int, Fraction] = field(default_factory=dict)

    def __getitem__(self, r: int) -> Fraction:
        return self.probs.get(r, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))

    def items(self):
        return sorted(self.probs.items())


def _clean(probs: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    return {r: v for r, v in sorted(probs.items()) if v != 0}


# ---------------------------------------------------------------------------
# profiles


def _caps_of(elements: Iterable[int]) -> Dict[int, int]:
    caps: Dict[int, int] = {}
    for d in elements:
        for q, e in factorize(d).items():
            if e > caps.get(q, 0):
                caps[q] = e
    return caps


def relevant_primes(w: Window) -> List[PrimeCap]:
    """Primes dividing some element of the window, with their maximal valuation."""
    caps = _caps_of(w.divisors)
    return [PrimeCap(q, caps[q]) for q in sorted(caps)]


def _check_profile(profile: Sequence[int], caps: Sequence[PrimeCap]) -> None:
    if len(profile) != len(caps):
        raise ValueError(f"profile has {len(profile)} entries for {len(caps)} primes")
    for e, pc in zip(profile, caps):
        if not 0 <= e <= pc.cap:
            raise ValueError(f"exponent {e} outside [0, {pc.cap}] for prime {pc.q}")


def profile_weight(profile: Sequence[int], caps: Sequence[PrimeCap]) -> Fraction:
    """Density of the integers whose capped valuations equal ``profile``.

    An entry equal to the cap means "valuation at least cap".
    """
    _check_profile(profile, caps)
    weight = Fraction(1)
    for e, pc in zip(profile, caps):
        if e < pc.cap:
            weight *= Fraction(pc.q - 1, pc.q ** (e + 1))
        else:
            weight *= Fraction(1, pc.q**pc.cap)
    return weight


def divisor_count(profile: Sequence[int], w: Window) -> int:
    """Number of window elements dividing every integer of the profile's class."""
    caps = relevant_primes(w)
    _check_profile(profile, caps)
    bound = {pc.q: e for pc, e in zip(caps, profile)}
    return sum(
        all(e <= bound[q] for q, e in factorize(d).items()) for d in w.divisors
    )


def state_space_size(w: Window, marginalize: bool = True) -> int:
    """prod(cap+1) over the primes that the enumeration has to branch on."""
    elements = list(w.divisors)
    if marginalize:
        elements = [d for d in elements if d not in _singletons(elements)]
    return math.prod(e + 1 for e in _caps_of(elements).values())


def _singletons(elements: Sequence[int]) -> set:
    """Prime elements whose prime divides no other element of the multiset."""
    hits: Dict[int, int] = defaultdict(int)
    for d in elements:
        for q in factorize(d) if d > 1 else ():
            hits[q] += 1
    return {d for d in elements if d > 1 and hits.get(d) == 1 and is_prime(d)}


def _enumerate_counts(elements: Sequence[int], guard: int) -> Tuple[int, Dict[int, int]]:
    """Distribution of #{d in elements : d | x} over one period, as integer counts.

    Returns (modulus, counts) with sum(counts) == modulus. Elements equal to 1
    always divide and only shift the count.
    """
    shift = sum(1 for d in elements if d == 1)
    elems = [d for d in elements if d > 1]
    facts = [factorize(d) for d in elems]
    caps: Dict[int, int] = {}
    for f in facts:
        for q, e in f.items():
            caps[q] = max(caps.get(q, 0), e)
    primes = sorted(caps)
    size = math.prod(caps[q] + 1 for q in primes)
    if size > guard:
        raise GuardExceeded(size, guard)

    level_of = {q: i for i, q in enumerate(primes)}
    nlev = len(primes)
    # le_masks[level][e]: elements whose valuation at that prime is <= e
    le_masks: List[List[int]] = []
    for q in primes:
        row = []
        for e in range(caps[q] + 1):
            mask = 0
            for idx, f in enumerate(facts):
                if f.get(q, 0) <= e:
                    mask |= 1 << idx
            row.append(mask)
        le_masks.append(row)
    # elements still waiting on a prime at index >= level
    unsettled = [0] * (nlev + 1)
    for idx, f in enumerate(facts):
        top = max(level_of[q] for q in f)
        for lev in range(top + 1):
            unsettled[lev] |= 1 << idx
    weights = []
    for q in primes:
        cap = caps[q]
        weights.append([q ** (cap - e - 1) * (q - 1) for e in range(cap)] + [1])

    memo: Dict[Tuple[int, int], Dict[int, int]] = {}

    def walk(level: int, alive: int) -> Dict[int, int]:
        if level == nlev:
            return {0: 1}
        key = (level, alive)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nxt = unsettled[level + 1]
        # exponents leading to the same surviving set share one subtree
        branches: Dict[int, int] = {}
        for e, wgt in enumerate(weights[level]):
            survivors = alive & le_masks[level][e]
            branches[survivors] = branches.get(survivors, 0) + wgt
        out: Dict[int, int] = defaultdict(int)
        for survivors, wgt in branches.items():
            c = (survivors & ~nxt).bit_count()
            for r, v in walk(level + 1, survivors & nxt).items():
                out[r + c] += wgt * v
        res = dict(out)
        memo[key] = res
        return res

    full = (1 << len(elems)) - 1
    counts = walk(0, full) if nlev else {0: 1}
    modulus = math.prod(q ** caps[q] for q in primes)
    return modulus, {r + shift: v for r, v in counts.items() if v}


def count_distribution(
    elements: Sequence[int], guard: int = DEFAULT_GUARD, marginalize: bool = True
) -> Dict[int, Fraction]:
    """Exact distribution of how many of ``elements`` divide a random integer."""
    singles = sorted(_singletons(elements)) if marginalize else []
    rest = [d for d in elements if d not in singles] if singles else list(elements)
    modulus, counts = _enumerate_counts(rest, guard)
    # each singleton prime is an independent Bernoulli(1/q) event
    for q in singles:
        top = max(counts) + 1
        counts = {
            r: (q - 1) * counts.get(r, 0) + counts.get(r - 1, 0) for r in range(top + 1)
        }
        modulus *= q
    return _clean({r: Fraction(v, modulus) for r, v in counts.items()})


def density_distribution(
    w: Window, guard: int = DEFAULT_GUARD, marginalize: bool = True
) -> DensityDistribution:
    try:
        probs = count_distribution(list(w.divisors), guard, marginalize)
    except GuardExceeded as exc:
        raise GuardExceeded(exc.size, exc.guard, w.m) from None
    return DensityDistribution(w, probs)


def delta(w: Window, r: int, guard: int = DEFAULT_GUARD) -> Fraction:
    return density_distribution(w, guard)[r]


# ---------------------------------------------------------------------------
# inclusion-exclusion oracle


def inclusion_exclusion_delta(w: Window, r: int) -> Fraction:
    """delta_r = sum_{j>=r} (-1)^(j-r) C(j,r) sum_{|T|=j} 1/lcm(T)."""
    if w.width > IE_MAX_WIDTH:
        raise WindowTooWide(f"window width {w.width} exceeds {IE_MAX_WIDTH}")
    elems = list(w.divisors)
    period = factored_value(lcm_range(w.n + 1, w.m - 1))
    # subset_sums[j] = sum over j-subsets of period / lcm(T)
    subset_sums = [0] * (len(elems) + 1)

    def grow(start: int, size: int, cur: int) -> None:
        subset_sums[size] += period // cur
        for i in range(start, len(elems)):
            d = elems[i]
            grow(i + 1, size + 1, cur * d // math.gcd(cur, d))

    grow(0, 0, 1)
    total = sum(
        (-1) ** (j - r) * binomial(j, r) * subset_sums[j]
        for j in range(r, len(elems) + 1)
    )
    return Fraction(total, period)


# ---------------------------------------------------------------------------
# incremental sequences


def extend_with_prime(dist: DensityDistribution, p: int) -> DensityDistribution:
    """Window (n, p) -> (n, p+1) when the new divisor p is prime."""
    if p != dist.window.m:
        raise ValueError(f"new divisor must be m={dist.window.m}, got {p}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    stay, hit = Fraction(p - 1, p), Fraction(1, p)
    top = max(dist.probs, default=0) + 1
    probs = {r: stay * dist[r] + hit * dist[r - 1] for r in range(top + 1)}
    return DensityDistribution(Window(dist.window.n, p + 1), _clean(probs))


def distribution_sequence(
    n: int, m_max: int, guard: int = DEFAULT_GUARD, m_min: Optional[int] = None
) -> Iterator[DensityDistribution]:
    """Distributions for m = m_min..m_max (default m_min = n+2), prime steps incremental."""
    start = n + 2 if m_min is None else m_min
    Window(n, start)
    dist: Optional[DensityDistribution] = None
    for m in range(start, m_max + 1):
        if dist is not None and is_prime(m - 1):
            dist = extend_with_prime(dist, m - 1)
        else:
            dist = density_distribution(Window(n, m), guard)
        yield dist


def delta_sequence(
    n: int, r: int, m_max: int, guard: int = DEFAULT_GUARD
) -> List[Tuple[int, Fraction]]:
    if m_max < n + 2:
        raise InvalidWindow(f"m_max must be >= n+2 = {n + 2}")
    return [(d.window.m, d[r]) for d in distribution_sequence(n, m_max, guard)]


def feasible_sequence(
    n: int, r: int, guard: int = DEFAULT_GUARD, m_cap: Optional[int] = None
) -> Tuple[List[Tuple[int, Fraction]], Optional[int]]:
    """delta_r(n, m) from m = n+2 until the guard trips (or m_cap is reached).

    Returns the values and the first m that exceeded the guard (None if m_cap
    was reached first).
    """
    out: List[Tuple[int, Fraction]] = []
    limit = m_cap if m_cap is not None else 1 << 62
    try:
        for d in distribution_sequence(n, limit, guard):
            out.append((d.window.m, d[r]))
    except GuardExceeded as exc:
        return out, exc.m
    return out, None


@dataclass(frozen=True)
class WitnessScan:
    n: int
    r: int
    sequence: List[Tuple[int, Fraction]]
    witness_m: Optional[Tuple[int, int, int]]
    frontier: Optional[int]  # first m that exceeded the guard, if the scan stopped there


def scan_for_witness(
    n: int, r: int = 1, guard: int = DEFAULT_GUARD, m_cap: Optional[int] = None
) -> WitnessScan:
    """Grow m from n+2 until delta_r(n, .) is provably not unimodal."""
    limit = m_cap if m_cap is not None else 1 << 62
    seen: List[Tuple[int, Fraction]] = []

    def stream():
        for d in distribution_sequence(n, limit, guard):
            seen.append((d.window.m, d[r]))
            yield seen[-1]

    try:
        prefix, witness = first_violation(stream())
    except GuardExceeded as exc:
        return WitnessScan(n, r, seen, None, exc.m)
    witness_m = tuple(prefix[j][0] for j in witness) if witness else None
    return WitnessScan(n, r, prefix, witness_m, None)


# ---------------------------------------------------------------------------
# n = 1


@dataclass(frozen=True)
class NOneState:
    """Window (1, m): A/L = delta_1(1,m), phi(L)/L = delta_0(1,m), and A/phi(L)."""

    m: int
    a_over_l: Fraction
    phi_over_l: Fraction
    a_over_phi: Fraction


N_ONE_BASE = NOneState(3, Fraction(1, 2), Fraction(1, 2), Fraction(1))


def n_one_step(state: NOneState) -> NOneState:
    """Add the divisor m to the window (1, m)."""
    if state.m < 3:
        raise InvalidWindow("the n = 1 recursion starts at m = 3")
    d = state.m
    pp = prime_power_base(d)
    if pp is None or pp[1] > 2:
        return replace(state, m=d + 1)
    p, e = pp
    if e == 1:
        return NOneState(
            d + 1,
            Fraction(p - 1, p) * state.a_over_l + state.phi_over_l / p,
            Fraction(p - 1, p) * state.phi_over_l,
            state.a_over_phi + Fraction(1, p - 1),
        )
    # multiples of p that were counted once now also have p^2
    return NOneState(
        d + 1,
        state.a_over_l - state.phi_over_l / (p * (p - 1)),
        state.phi_over_l,
        state.a_over_phi - Fraction(1, p * (p - 1)),
    )


def n_one_states(m_max: int) -> Iterator[NOneState]:
    if m_max < 3:
        raise InvalidWindow("m_max must be >= 3")
    state = N_ONE_BASE
    yield state
    while state.m < m_max:
        state = n_one_step(state)
        yield state


def n_one_sequence(m_max: int) -> List[Tuple[int, Fraction, Fraction]]:
    """(m, delta_1(1,m), delta_0(1,m)) for m = 3..m_max."""
    return [(s.m, s.a_over_l, s.phi_over_l) for s in n_one_states(m_max)]


# ---------------------------------------------------------------------------
# the 2p observation


@dataclass(frozen=True)
class TwoPResult:
    strict_drop: bool
    sole_2p_density: Fraction


def sole_divisor_density(w: Window, d: int, guard: int = DEFAULT_GUARD) -> Fraction:
    """Density of integers whose only divisor in the window is d.

    Writing x = d*y, another element e divides x iff e/gcd(e,d) divides y.
    """
    if d not in w.divisors:
        raise ValueError(f"{d} is not in window ({w.n},{w.m})")
    reduced = [e // math.gcd(e, d) for e in w.divisors if e != d]
    return count_distribution(reduced, guard).get(0, Fraction(0)) / d


def two_p_check(n: int, p: int, guard: int = DEFAULT_GUARD) -> TwoPResult:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p <= n:
        raise ValueError(f"the 2p observation needs p > n, got p={p}, n={n}")
    before = delta(Window(n, 2 * p), 1, guard)
    after_w = Window(n, 2 * p + 1)
    after = delta(after_w, 1, guard)
    return TwoPResult(after < before, sole_divisor_density(after_w, 2 * p, guard))
