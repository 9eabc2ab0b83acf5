"""Instance-optimal approximation factor via load-shape enumeration.

A decreasing load profile is summarized by its shape: the maximum load M, the
last index k carrying load M, and the first indices k', k'' whose loads drop
below M-1 and M-2.  For each shape there are only polynomially many candidate
values for the best-alternative costs seen by max-load players and by the
rest; given a shape, those two values, and a factor alpha, a short greedy
procedure either produces a witness load vector or proves none exists.  The
optimal factor is then the smallest member of a finite candidate-ratio set
for which any shape is feasible.

Shape indices k, k', k'' are 1-based to match the non-increasing load
picture; the sentinel value m+1 for k' (or k'') means no resource has load
below M-1 (or M-2).  Coefficient lookups translate to the 0-based arrays used
everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .core import (
    Instance,
    binding_deviation,
    is_alpha_pne,
    k_upper_bound,
)

__all__ = [
    "ShapeConfig",
    "OptResult",
    "cbar_candidates",
    "feasible_load_vector",
    "candidate_alphas",
    "best_alpha",
]


@dataclass(frozen=True)
class ShapeConfig:
    """A load shape together with the two best-alternative cost values.

    cbar_max is the assumed best-alternative cost for players on max-load
    resources, cbar_rest for everyone else.
    """

    M: int
    k: int
    k_prime: int
    k_dprime: int
    cbar_max: Fraction
    cbar_rest: Fraction


@dataclass(frozen=True)
class OptResult:
    alpha_star: Fraction
    witness: Tuple[int, ...]
    #: (ratio, resource, best deviation target, cost, deviation cost) of the
    #: tightest deviation in the witness, or None for a single resource.
    binding: Optional[Tuple[object, int, int, Fraction, Fraction]]


def cbar_candidates(
    inst: Instance, M: int, k: int, k_prime: int, k_dprime: int
) -> Tuple[List[Fraction], List[Fraction]]:
    """All values the two best-alternative costs can take for this shape.

    Returns (candidates for max-load players, candidates for the rest),
    deduplicated.  Each list enumerates every argument of the corresponding
    minimum, so the realized value of any profile with this shape is included.
    """
    a = inst.coefficients
    B = inst.budget
    m = inst.m
    tail_terms = [
        a[r - 1] * (load + 1)
        for r in range(k_dprime, m + 1)
        for load in range(0, M - 2)  # loads 0 .. M-3
    ]

    if k == 1:
        cmax = []
    else:
        cmax = [a[0] * (M + 1) + B]
    if k_prime >= k + 2:
        cmax.append(a[k] * M + B / k)  # a_{k+1}, 0-based a[k]
    if k_prime < k_dprime:
        if k == 1:
            cmax.append(a[k_prime - 1] * (M - 1) + B / k_prime)
        else:
            cmax.append(a[k_prime - 1] * (M - 1))
    cmax.extend(tail_terms)

    crest = [a[0] * (M + 1) + B]
    if k_prime >= k + 2:
        crest.append(a[k] * M + B / (k + 1))
    if k_prime < k_dprime:
        crest.append(a[k_prime - 1] * (M - 1))
    crest.extend(tail_terms)

    return sorted(set(cmax)), sorted(set(crest))


def _head_ok_max(inst: Instance, shape_M, k, k_prime, k_dprime, alpha, cbar_max) -> bool:
    """Feasibility conditions involving only the max-load alternative cost."""
    a, B, M = inst.coefficients, inst.budget, shape_M
    if a[k - 1] * M + B / k > alpha * cbar_max:
        return False
    if k >= 2 and a[0] * (M + 1) + B < cbar_max:
        return False
    if k_prime >= k + 2 and a[k] * M + B / k < cbar_max:
        return False
    if k_prime < k_dprime:
        if k == 1 and a[k_prime - 1] * (M - 1) + B / k_prime < cbar_max:
            return False
        if k >= 2 and a[k_prime - 1] * (M - 1) < cbar_max:
            return False
    return True


def _head_ok_rest(inst: Instance, shape_M, k, k_prime, k_dprime, alpha, cbar_rest) -> bool:
    """Feasibility conditions involving only the below-max alternative cost."""
    a, B, M = inst.coefficients, inst.budget, shape_M
    if k_prime >= k + 2 and a[k_prime - 2] * (M - 1) > alpha * cbar_rest:
        return False
    if k_prime < k_dprime and a[k_dprime - 2] * (M - 2) > alpha * cbar_rest:
        return False
    if a[0] * (M + 1) + B < cbar_rest:
        return False
    if k_prime >= k + 2 and a[k] * M + B / (k + 1) < cbar_rest:
        return False
    if k_prime < k_dprime and a[k_prime - 1] * (M - 1) < cbar_rest:
        return False
    return True


def _prefix_loads(M: int, k: int, k_prime: int, k_dprime: int) -> Optional[List[int]]:
    """Loads of resources 1..k''-1, or None if some band would go negative."""
    prefix = (
        [M] * k + [M - 1] * (k_prime - k - 1) + [M - 2] * (k_dprime - k_prime)
    )
    if prefix and prefix[-1] < 0:
        return None
    return prefix


def _tail_bounds(
    inst: Instance, r: int, M: int, alpha, cbar_max, cbar_rest
) -> Optional[Tuple[int, int]]:
    """Lower/upper load bounds for a tail resource r (1-based), or None.

    A zero-coefficient tail resource would offer a free alternative, which is
    compatible with the assumed minima only if both are zero.
    """
    a_r = inst.coefficients[r - 1]
    if a_r == 0:
        if cbar_rest > 0 or cbar_max > 0:
            return None
        lower = 0
        upper = M - 3
    else:
        lower = max(
            0,
            math.ceil(cbar_rest / a_r) - 1,
            math.ceil(cbar_max / a_r) - 1,
        )
        upper = min(M - 3, math.floor(alpha * cbar_rest / a_r))
    if lower > upper:
        return None
    return lower, upper


def feasible_load_vector(
    inst: Instance, shape: ShapeConfig, alpha: Union[Fraction, int]
) -> Optional[Tuple[int, ...]]:
    """Witness load vector for this shape and alpha, or None if infeasible.

    Implements the head-inequality check, the fixed M/M-1/M-2 prefix, the
    per-resource tail bounds, and a left-to-right greedy fill of the leftover
    players.
    """
    alpha = Fraction(alpha)
    M, k, k_prime, k_dprime = shape.M, shape.k, shape.k_prime, shape.k_dprime
    if not (
        1 <= k <= inst.m - 1
        and k + 1 <= k_prime <= inst.m + 1
        and k_prime <= k_dprime <= inst.m + 1
        and math.ceil(inst.n / inst.m) <= M <= inst.n
    ):
        raise ValueError(f"invalid shape {shape}")
    if shape.cbar_max < 0 or shape.cbar_rest < 0:
        raise ValueError("alternative-cost values must be non-negative")

    if not _head_ok_max(inst, M, k, k_prime, k_dprime, alpha, shape.cbar_max):
        return None
    if not _head_ok_rest(inst, M, k, k_prime, k_dprime, alpha, shape.cbar_rest):
        return None

    prefix = _prefix_loads(M, k, k_prime, k_dprime)
    if prefix is None:
        return None
    leftover = inst.n - sum(prefix)
    if leftover < 0:
        return None

    tail = list(range(k_dprime, inst.m + 1))
    bounds = []
    for r in tail:
        b = _tail_bounds(inst, r, M, alpha, shape.cbar_max, shape.cbar_rest)
        if b is None:
            return None
        bounds.append(b)

    low = sum(b[0] for b in bounds)
    high = sum(b[1] for b in bounds)
    if not low <= leftover <= high:
        return None

    loads = prefix + [b[0] for b in bounds]
    leftover -= low
    for i, (b_low, b_high) in enumerate(bounds):
        if leftover == 0:
            break
        take = min(b_high - b_low, leftover)
        loads[k_dprime - 1 + i] += take
        leftover -= take
    return tuple(loads)


def candidate_alphas(inst: Instance, precision: int = 12) -> List[Fraction]:
    """All ratios of possible cost values, clipped to [1, upper threshold].

    Cost values are a_r * load + (an even budget share or nothing); the
    optimal factor is always a ratio of two of them, so this list contains it.
    """
    values = set()
    for a in set(inst.coefficients):
        for load in range(inst.n + 1):
            base = a * load
            values.add(base)
            for p in range(1, inst.m + 1):
                values.add(base + inst.budget / p)
    ceiling = k_upper_bound(precision)
    ratios = {Fraction(1)}
    positive = [v for v in values if v > 0]
    for u in values:
        for v in positive:
            q = u / v
            if 1 <= q <= ceiling:
                ratios.add(q)
    return sorted(ratios)


def _feasible_witness(
    inst: Instance, alpha: Fraction
) -> Optional[Tuple[int, ...]]:
    """Some alpha-approximate equilibrium with decreasing loads, or None."""
    n, m = inst.n, inst.m
    a, B = inst.coefficients, inst.budget

    if n % m == 0:
        M = n // m
        if a[m - 1] * M + B / m <= alpha * (a[0] * (M + 1) + B):
            witness = (M,) * m
            if is_alpha_pne(inst, witness, alpha):
                return witness

    for M in range(math.ceil(n / m), n + 1):
        for k in range(1, m):
            if k * M > n:
                break
            for k_prime in range(k + 1, m + 2):
                for k_dprime in range(k_prime, m + 2):
                    prefix = _prefix_loads(M, k, k_prime, k_dprime)
                    if prefix is None:
                        continue
                    leftover = n - sum(prefix)
                    if leftover < 0:
                        continue
                    if k_dprime == m + 1 and leftover != 0:
                        continue
                    cmax_all, crest_all = cbar_candidates(inst, M, k, k_prime, k_dprime)
                    cmax_ok = [
                        c
                        for c in cmax_all
                        if _head_ok_max(inst, M, k, k_prime, k_dprime, alpha, c)
                    ]
                    if not cmax_ok:
                        continue
                    crest_ok = [
                        c
                        for c in crest_all
                        if _head_ok_rest(inst, M, k, k_prime, k_dprime, alpha, c)
                    ]
                    if not crest_ok:
                        continue
                    for cmax in cmax_ok:
                        for crest in crest_ok:
                            shape = ShapeConfig(M, k, k_prime, k_dprime, cmax, crest)
                            witness = feasible_load_vector(inst, shape, alpha)
                            if witness is not None and is_alpha_pne(
                                inst, witness, alpha
                            ):
                                return witness
    return None


def best_alpha(inst: Instance, precision: int = 12) -> OptResult:
    """Smallest factor for which an approximate equilibrium exists, with witness.

    Binary search over the candidate ratios; feasibility is monotone in the
    factor, and existence at the upper threshold is guaranteed, so the search
    always succeeds.
    """
    candidates = candidate_alphas(inst, precision)
    lo, hi = 0, len(candidates) - 1
    witnesses = {}

    def feasible(i: int) -> bool:
        if i not in witnesses:
            witnesses[i] = _feasible_witness(inst, candidates[i])
        return witnesses[i] is not None

    if not feasible(hi):
        raise RuntimeError(
            "no candidate factor is feasible; this contradicts the existence "
            "guarantee and indicates a bug"
        )
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    witness = witnesses[hi]
    return OptResult(
        alpha_star=candidates[hi],
        witness=witness,
        binding=binding_deviation(inst, witness),
    )
