"""Exact-arithmetic model of singleton congestion games with a budgeted adversary.

A game has n identical players, m resources with per-unit cost coefficients
a_1 <= ... <= a_m, and an adversary with budget B > 0.  After the players pick
resources, the adversary spreads B evenly over the resources carrying maximum
load; every player on an attacked resource pays her share of the budget on top
of the congestion cost.

All quantities are `fractions.Fraction`; every comparison in this module is
exact.  Resources are 0-indexed throughout the code base.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

__all__ = [
    "INFINITY",
    "ExtendedRational",
    "GameError",
    "EmptyResources",
    "NonPositiveBudget",
    "NegativeCoefficient",
    "NonPositivePlayers",
    "EmptyGame",
    "UnoccupiedResource",
    "SameResource",
    "EmptySource",
    "Instance",
    "KConstant",
    "validate_instance",
    "scale_instance",
    "attack",
    "resource_cost",
    "deviation_cost",
    "needed_alpha",
    "binding_deviation",
    "is_alpha_pne",
    "compute_K",
    "k_upper_bound",
]

#: Marker for "no finite approximation factor suffices".  A float infinity
#: compares exactly against any Fraction, which is all we need.
INFINITY = float("inf")

ExtendedRational = Union[Fraction, float]

Loads = Sequence[int]


class GameError(ValueError):
    """Base class for invalid game data or invalid operations on it."""


class EmptyResources(GameError):
    pass


class NonPositiveBudget(GameError):
    pass


class NegativeCoefficient(GameError):
    pass


class NonPositivePlayers(GameError):
    pass


class EmptyGame(GameError):
    """Raised when an operation needs at least one seated player."""


class UnoccupiedResource(GameError):
    pass


class SameResource(GameError):
    pass


class EmptySource(GameError):
    pass


@dataclass(frozen=True)
class Instance:
    """A game instance: player count, sorted cost coefficients, adversary budget.

    Construct through :func:`validate_instance`; the constructor itself does
    not sort or validate.
    """

    n: int
    coefficients: Tuple[Fraction, ...]
    budget: Fraction

    @property
    def m(self) -> int:
        return len(self.coefficients)


def validate_instance(
    raw_coefficients: Iterable[Union[Fraction, int]],
    n: int,
    budget: Union[Fraction, int],
) -> Instance:
    """Build an Instance, sorting coefficients non-decreasingly.

    Original resource labels are discarded: the game is symmetric in resources
    of equal coefficient and every algorithm here assumes the sorted order.
    """
    coeffs = tuple(sorted(Fraction(a) for a in raw_coefficients))
    budget = Fraction(budget)
    if not coeffs:
        raise EmptyResources("need at least one resource")
    if n < 1:
        raise NonPositivePlayers(f"player count must be positive, got {n}")
    if budget <= 0:
        raise NonPositiveBudget(f"budget must be positive, got {budget}")
    for a in coeffs:
        if a < 0:
            raise NegativeCoefficient(f"coefficient must be non-negative, got {a}")
    return Instance(n=n, coefficients=coeffs, budget=budget)


def scale_instance(inst: Instance, factor: Union[Fraction, int]) -> Instance:
    """Scale all coefficients and the budget by a positive rational factor."""
    factor = Fraction(factor)
    if factor <= 0:
        raise GameError(f"scale factor must be positive, got {factor}")
    return Instance(
        n=inst.n,
        coefficients=tuple(a * factor for a in inst.coefficients),
        budget=inst.budget * factor,
    )


def attack(loads: Loads, budget: Union[Fraction, int]) -> Tuple[Fraction, ...]:
    """The adversary's optimal budget split: B shared evenly over max-load resources."""
    budget = Fraction(budget)
    peak = max(loads)
    if peak == 0:
        raise EmptyGame("no players seated; the adversary has nothing to attack")
    share = budget / sum(1 for x in loads if x == peak)
    return tuple(share if x == peak else Fraction(0) for x in loads)


def resource_cost(inst: Instance, loads: Loads, r: int) -> Fraction:
    """Cost experienced by any player seated on resource r: a_r * load + attack share."""
    if loads[r] < 1:
        raise UnoccupiedResource(f"resource {r} carries no player")
    peak = max(loads)
    base = inst.coefficients[r] * loads[r]
    if loads[r] < peak:
        return base
    return base + inst.budget / loads.count(peak)


def deviation_cost(
    inst: Instance, loads: Loads, source: Optional[int], target: int
) -> Fraction:
    """Cost a player would pay after moving from `source` to `target`.

    `source=None` models a newly entering player.  The result depends only on
    the load vector and the two resources, never on player identity.
    """
    if source == target:
        raise SameResource(f"deviation target equals source resource {target}")
    if source is not None and loads[source] < 1:
        raise EmptySource(f"cannot deviate from empty resource {source}")
    after = list(loads)
    if source is not None:
        after[source] -= 1
    after[target] += 1
    peak = max(after)
    base = inst.coefficients[target] * after[target]
    if after[target] < peak:
        return base
    return base + inst.budget / after.count(peak)


def needed_alpha(inst: Instance, loads: Loads) -> ExtendedRational:
    """Smallest factor making every unilateral deviation non-improving.

    Returns the raw maximum, over occupied resources r, of
    ``resource_cost(r) / min_{r' != r} deviation_cost(r -> r')``; a result
    below 1 means the profile is an exact equilibrium with slack.  Returns
    INFINITY when a positive-cost player has a zero-cost deviation.  With a
    single resource there is no deviation and the profile is vacuously an
    exact equilibrium, so 1 is returned.
    """
    found = _binding_deviation_impl(inst, loads)
    if found is None:
        return Fraction(1)
    return found[0]


def binding_deviation(
    inst: Instance, loads: Loads
) -> Optional[Tuple[ExtendedRational, int, int, Fraction, Fraction]]:
    """The deviation pair realizing needed_alpha.

    Returns ``(ratio, r, r_to, cost, dev)`` for the occupied resource r with
    the largest cost-to-best-deviation ratio, or None when m = 1.
    """
    return _binding_deviation_impl(inst, loads)


def _binding_deviation_impl(inst, loads):
    m = inst.m
    if sum(loads) == 0:
        raise EmptyGame("profile seats no players")
    if m == 1:
        return None
    best = None
    for r in range(m):
        if loads[r] < 1:
            continue
        cost = resource_cost(inst, loads, r)
        dev_to = min(
            range(m),
            key=lambda s: (deviation_cost(inst, loads, r, s), s) if s != r else (INFINITY, s),
        )
        dev = deviation_cost(inst, loads, r, dev_to)
        if dev == 0:
            ratio = INFINITY if cost > 0 else Fraction(0)
        else:
            ratio = cost / dev
        if best is None or ratio > best[0]:
            best = (ratio, r, dev_to, cost, dev)
    return best


def is_alpha_pne(inst: Instance, loads: Loads, alpha: Union[Fraction, int]) -> bool:
    """True iff no player can improve her cost by more than factor `alpha`."""
    if sum(loads) != inst.n:
        raise GameError(f"loads sum to {sum(loads)}, expected {inst.n} players")
    return needed_alpha(inst, loads) <= Fraction(alpha)


TOWARD_ZERO = "toward-zero"
AWAY_FROM_ZERO = "away-from-zero"


@dataclass(frozen=True)
class KConstant:
    """A rational bracket endpoint for the universal threshold constant.

    The constant is the unique root of x^3 - x^2/2 - 1 in (1, 2), roughly
    1.1974.  ``away-from-zero`` endpoints lie at or above the root,
    ``toward-zero`` endpoints at or below, and the two differ by at most
    10**-precision.
    """

    value: Fraction
    rounding: str
    precision: int


def _threshold_polynomial(x: Fraction) -> Fraction:
    return x * x * x - x * x / 2 - 1


def compute_K(precision: int, rounding: str = AWAY_FROM_ZERO) -> KConstant:
    """Bracket the threshold constant by exact-rational bisection on [1, 2]."""
    if precision < 1:
        raise ValueError(f"precision must be >= 1, got {precision}")
    if rounding not in (TOWARD_ZERO, AWAY_FROM_ZERO):
        raise ValueError(f"unknown rounding direction {rounding!r}")
    lo, hi = Fraction(1), Fraction(2)
    width = Fraction(1, 10**precision)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _threshold_polynomial(mid) >= 0:
            hi = mid
        else:
            lo = mid
    value = lo if rounding == TOWARD_ZERO else hi
    return KConstant(value=value, rounding=rounding, precision=precision)


def k_upper_bound(precision: int = 12) -> Fraction:
    """Rational upper bound on the threshold constant (safe solver alpha)."""
    return compute_K(precision, AWAY_FROM_ZERO).value
