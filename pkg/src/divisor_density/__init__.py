"""Exact densities of integers by divisors in a window and by k-th prime factor."""

from .kth_prime import d_k_sequence, delta_table, monotone_tail_certificate, unimodality_verdict
from .sequence_analysis import count_local_maxima, local_extrema, monotone_from
from .window_density import (
    DensityDistribution,
    GuardExceeded,
    Window,
    delta,
    delta_sequence,
    density_distribution,
    extend_with_prime,
    inclusion_exclusion_delta,
    n_one_sequence,
    two_p_check,
)

__all__ = [
    "DensityDistribution",
    "GuardExceeded",
    "Window",
    "count_local_maxima",
    "d_k_sequence",
    "delta",
    "delta_sequence",
    "delta_table",
    "density_distribution",
    "extend_with_prime",
    "inclusion_exclusion_delta",
    "local_extrema",
    "monotone_from",
    "monotone_tail_certificate",
    "n_one_sequence",
    "two_p_check",
    "unimodality_verdict",
]
