"""Brute-force ground truth for cross-validating the solvers at small scale.

For factors up to 2 it suffices to search non-increasing load profiles (any
equilibrium can be rearranged into one by swapping whole resources), which
collapses the profile space to integer partitions of n into at most m parts.
Every optimum the fast solvers report is checked against these enumerations
in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Tuple

from .core import (
    ExtendedRational,
    Instance,
    deviation_cost,
    needed_alpha,
    resource_cost,
)

__all__ = [
    "enumerate_profiles",
    "count_profiles",
    "oracle_best_alpha",
    "oracle_has_exact_pne",
    "oracle_best_additive_epsilon",
]


def enumerate_profiles(n: int, m: int) -> Iterator[Tuple[int, ...]]:
    """All non-increasing load vectors of length m summing to n.

    Zero-padded partitions of n into at most m parts, yielded in
    lexicographically descending order, each exactly once.
    """
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    yield from _descending(n, m, n)


def _descending(remaining: int, slots: int, cap: int) -> Iterator[Tuple[int, ...]]:
    if slots == 0:
        if remaining == 0:
            yield ()
        return
    top = min(cap, remaining)
    for first in range(top, -1, -1):
        if first * slots < remaining:
            break
        for rest in _descending(remaining - first, slots - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def count_profiles(n: int, m: int) -> int:
    """Number of partitions of n into at most m parts, via the standard recurrence."""
    if n == 0:
        return 1
    if m == 0:
        return 0
    if n < 0:
        return 0
    return count_profiles(n - m, m) + count_profiles(n, m - 1)


def oracle_best_alpha(inst: Instance) -> Tuple[ExtendedRational, Tuple[int, ...]]:
    """Exact smallest feasible factor and a witness profile.

    Minimizes max(needed_alpha, 1) over all decreasing profiles; ties go to
    the lexicographically largest profile.  Valid as the global optimum
    whenever the result is at most 2, which the universal existence bound
    guarantees.
    """
    best_value: Optional[ExtendedRational] = None
    best_profile: Optional[Tuple[int, ...]] = None
    one = Fraction(1)
    for profile in enumerate_profiles(inst.n, inst.m):
        value = max(needed_alpha(inst, profile), one)
        if best_value is None or value < best_value:
            best_value = value
            best_profile = profile
    return best_value, best_profile


def oracle_has_exact_pne(
    inst: Instance,
) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """Whether an exact equilibrium exists, with a witness when it does."""
    value, profile = oracle_best_alpha(inst)
    if value <= 1:
        return True, profile
    return False, None


def oracle_best_additive_epsilon(
    inst: Instance,
) -> Tuple[Fraction, Tuple[int, ...]]:
    """Smallest additive slack over decreasing profiles, with witness.

    The slack of a profile is the worst, over occupied resources, of
    cost minus best deviation cost, clamped at zero.  The swap argument
    behind the decreasing-profile restriction is only proven for the
    multiplicative notion, so this optimum is exact under that same
    restriction (see README).
    """
    zero = Fraction(0)
    best_value: Optional[Fraction] = None
    best_profile: Optional[Tuple[int, ...]] = None
    for profile in enumerate_profiles(inst.n, inst.m):
        slack = zero
        for r in range(inst.m):
            if profile[r] < 1:
                continue
            cost = resource_cost(inst, profile, r)
            if inst.m == 1:
                continue
            dev = min(
                deviation_cost(inst, profile, r, s)
                for s in range(inst.m)
                if s != r
            )
            slack = max(slack, cost - dev)
        if best_value is None or slack < best_value:
            best_value = slack
            best_profile = profile
    return best_value, best_profile
