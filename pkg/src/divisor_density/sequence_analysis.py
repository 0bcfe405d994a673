"""Local extrema and unimodality of exact sequences.

Extrema are reported as maximal constant runs ``(start, end)`` (inclusive
indices). A run is a local maximum when every neighbouring run that exists is
strictly smaller; boundary runs have a single neighbour, and a constant
sequence is a single run that is both a maximum and a minimum.

A sequence is unimodal when it is non-decreasing and then non-increasing,
i.e. there is no triple i < j < k with seq[j] < seq[i] and seq[j] < seq[k].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

Run = Tuple[int, int]


@dataclass(frozen=True)
class ExtremaReport:
    maxima: List[Run]
    minima: List[Run]
    unimodal: bool
    witness: Optional[Tuple[int, int, int]]

    def interior_minima(self, length: int) -> List[Run]:
        return [(a, b) for a, b in self.minima if a > 0 and b < length - 1]


def constant_runs(seq: Sequence) -> List[Run]:
    runs = []
    start = 0
    for i in range(1, len(seq) + 1):
        if i == len(seq) or seq[i] != seq[start]:
            runs.append((start, i - 1))
            start = i
    return runs


def find_witness(seq: Sequence) -> Optional[Tuple[int, int, int]]:
    """Lexicographically smallest (i, j, k) with seq[j] < min(seq[i], seq[k])."""
    n = len(seq)
    if n < 3:
        return None
    # j is usable when something to its right is larger
    usable = [False] * n
    best_right = seq[-1]
    for j in range(n - 2, -1, -1):
        usable[j] = best_right > seq[j]
        if seq[j] > best_right:
            best_right = seq[j]
    # smallest usable value strictly to the right of each index
    low_right: List = [None] * n
    cur = None
    for j in range(n - 1, 0, -1):
        if usable[j] and (cur is None or seq[j] < cur):
            cur = seq[j]
        low_right[j - 1] = cur
    for i in range(n - 2):
        if low_right[i] is None or not low_right[i] < seq[i]:
            continue
        for j in range(i + 1, n - 1):
            if usable[j] and seq[j] < seq[i]:
                k = next(k for k in range(j + 1, n) if seq[k] > seq[j])
                return i, j, k
    return None


def local_extrema(seq: Sequence) -> ExtremaReport:
    if len(seq) == 0:
        raise ValueError("empty sequence")
    runs = constant_runs(seq)
    maxima, minima = [], []
    for idx, (a, b) in enumerate(runs):
        v = seq[a]
        neighbours = []
        if idx > 0:
            neighbours.append(seq[runs[idx - 1][0]])
        if idx + 1 < len(runs):
            neighbours.append(seq[runs[idx + 1][0]])
        if all(u < v for u in neighbours):
            maxima.append((a, b))
        if all(u > v for u in neighbours):
            minima.append((a, b))
    witness = find_witness(seq)
    return ExtremaReport(maxima, minima, witness is None, witness)


def count_local_maxima(seq: Sequence) -> int:
    return len(local_extrema(seq).maxima)


def is_unimodal_by_runs(seq: Sequence) -> bool:
    """Unimodality from the run structure alone (used to cross-check the witness search)."""
    rep = local_extrema(seq)
    return len(rep.maxima) <= 1 and not rep.interior_minima(len(seq))


def monotone_from(seq: Sequence) -> int:
    """Smallest t such that seq[t:] is non-increasing."""
    if len(seq) == 0:
        raise ValueError("empty sequence")
    t = len(seq) - 1
    while t > 0 and seq[t - 1] >= seq[t]:
        t -= 1
    return t


def first_violation(
    stream: Iterable[Tuple[object, object]],
) -> Tuple[List[Tuple[object, object]], Optional[Tuple[int, int, int]]]:
    """Consume (label, value) pairs until the prefix stops being unimodal.

    Returns the prefix read so far and its witness (None if the stream ran
    out while still unimodal).
    """
    prefix: List[Tuple[object, object]] = []
    values: List = []
    for label, value in stream:
        prefix.append((label, value))
        values.append(value)
        # a new violation can only end at the newest element
        if len(values) >= 3 and value > values[-2]:
            w = find_witness(values)
            if w is not None:
                return prefix, w
    return prefix, None
