"""Incremental computation of approximate equilibria.

Players are inserted one at a time onto a best-response resource.  Whenever
some seated player could cut her cost by more than the configured factor, the
most expensive such player moves to a best response, until everyone is
settled; only then is the next player inserted.  For any factor at or above
the threshold constant (see :func:`congestion_adversary.core.compute_K`) this
terminates, and the run is guarded by a per-round deviation budget that turns
the termination guarantee into a runtime check.

Players are interchangeable, so state is a load vector and trace events name
resources, not players.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple, Union

from .core import (
    ExtendedRational,
    GameError,
    INFINITY,
    Instance,
    deviation_cost,
    k_upper_bound,
    resource_cost,
)

__all__ = [
    "PLAYER_ADDED",
    "DEVIATION",
    "STRICT",
    "LENIENT",
    "GuardExceeded",
    "NoUnhappyPlayers",
    "TraceEvent",
    "SolveTrace",
    "SolverConfig",
    "best_response",
    "unhappy_set",
    "select_deviator",
    "solve",
]

PLAYER_ADDED = "player_added"
DEVIATION = "deviation"

STRICT = "strict"
LENIENT = "lenient"


class GuardExceeded(RuntimeError):
    """A settling round exceeded its deviation budget.

    With alpha at or above the threshold constant this signals a bug; with a
    smaller alpha it may simply mean no such equilibrium is reachable.
    """


class NoUnhappyPlayers(GameError):
    pass


@dataclass(frozen=True)
class TraceEvent:
    kind: str  # PLAYER_ADDED or DEVIATION
    round: int  # 1-based insertion round
    source: Optional[int]  # resource index, None for an entering player
    target: int
    cost_before: ExtendedRational  # INFINITY for an entering player
    cost_after: Fraction
    loads_after: Tuple[int, ...]


@dataclass(frozen=True)
class SolveTrace:
    events: Tuple[TraceEvent, ...]
    per_round_deviation_counts: Tuple[int, ...]

    def replay(self, m: int) -> Tuple[int, ...]:
        """Re-apply all events from the empty profile; returns the final loads."""
        loads = [0] * m
        for ev in self.events:
            if ev.source is not None:
                loads[ev.source] -= 1
            loads[ev.target] += 1
            if tuple(loads) != ev.loads_after:
                raise GameError(f"trace is inconsistent at event {ev}")
        return tuple(loads)


@dataclass(frozen=True)
class SolverConfig:
    alpha: Fraction
    guard_mode: str = LENIENT

    def __post_init__(self):
        if self.alpha < 1:
            raise GameError(f"alpha must be >= 1, got {self.alpha}")
        if self.guard_mode not in (STRICT, LENIENT):
            raise GameError(f"unknown guard mode {self.guard_mode!r}")

    def round_budget(self, round_index: int, m: int) -> int:
        # Strict is the bound from the termination analysis (no player moves
        # more than twice per round); lenient adds O(m) slack.
        if self.guard_mode == STRICT:
            return 2 * round_index
        return 2 * round_index + 3 * m + 3

    @classmethod
    def default(cls, precision: int = 12, guard_mode: str = LENIENT) -> "SolverConfig":
        return cls(alpha=k_upper_bound(precision), guard_mode=guard_mode)


def best_response(inst: Instance, loads: Sequence[int], source: Optional[int]) -> int:
    """Cheapest resource for a player on `source` (or entering, source=None).

    Staying put counts as an option with the player's current cost; ties break
    toward the smallest index.
    """
    if source is not None and loads[source] < 1:
        raise GameError(f"no player seated on resource {source}")

    def option_cost(r: int) -> Fraction:
        if r == source:
            return resource_cost(inst, loads, r)
        return deviation_cost(inst, loads, source, r)

    return min(range(inst.m), key=lambda r: (option_cost(r), r))


def unhappy_set(
    inst: Instance, loads: Sequence[int], alpha: Union[Fraction, int]
) -> Set[int]:
    """Occupied resources whose players have an alpha-improving deviation."""
    if sum(loads) < 1:
        raise GameError("profile seats no players")
    alpha = Fraction(alpha)
    result = set()
    for r in range(inst.m):
        if loads[r] < 1:
            continue
        cost = resource_cost(inst, loads, r)
        for s in range(inst.m):
            if s != r and cost > alpha * deviation_cost(inst, loads, r, s):
                result.add(r)
                break
    return result


def select_deviator(
    inst: Instance, loads: Sequence[int], alpha: Union[Fraction, int]
) -> int:
    """The unhappy resource with maximum cost; ties break toward the largest index."""
    unhappy = unhappy_set(inst, loads, alpha)
    if not unhappy:
        raise NoUnhappyPlayers("every player is settled")
    return max(unhappy, key=lambda r: (resource_cost(inst, loads, r), r))


def solve(inst: Instance, config: SolverConfig) -> Tuple[Tuple[int, ...], SolveTrace]:
    """Run the incremental insertion/settling schedule to completion.

    Returns the final load vector (an alpha-approximate equilibrium) and a
    full event trace.  Deterministic: identical inputs yield identical traces.
    """
    m = inst.m
    alpha = config.alpha
    loads: List[int] = [0] * m
    events: List[TraceEvent] = []
    per_round: List[int] = []

    for k in range(1, inst.n + 1):
        target = best_response(inst, loads, None)
        entering_cost = deviation_cost(inst, loads, None, target)
        loads[target] += 1
        _record(events, PLAYER_ADDED, k, None, target, INFINITY, entering_cost, loads)

        deviations = 0
        budget = config.round_budget(k, m)
        while True:
            unhappy = unhappy_set(inst, loads, alpha)
            if not unhappy:
                break
            deviations += 1
            if deviations > budget:
                raise GuardExceeded(
                    f"round {k} exceeded {budget} deviations "
                    f"({config.guard_mode} guard, alpha={alpha})"
                )
            source = max(unhappy, key=lambda r: (resource_cost(inst, loads, r), r))
            cost_before = resource_cost(inst, loads, source)
            target = best_response(inst, loads, source)
            cost_after = deviation_cost(inst, loads, source, target)
            if not cost_before > alpha * cost_after:
                raise AssertionError(
                    f"selected deviation {source}->{target} is not alpha-improving"
                )
            loads[source] -= 1
            loads[target] += 1
            _record(events, DEVIATION, k, source, target, cost_before, cost_after, loads)
        per_round.append(deviations)

    return tuple(loads), SolveTrace(
        events=tuple(events), per_round_deviation_counts=tuple(per_round)
    )


def _record(events, kind, round_index, source, target, cost_before, cost_after, loads):
    snapshot = tuple(loads)
    if any(snapshot[i] < snapshot[i + 1] for i in range(len(snapshot) - 1)):
        raise AssertionError(f"loads {snapshot} are not non-increasing after {kind}")
    events.append(
        TraceEvent(
            kind=kind,
            round=round_index,
            source=source,
            target=target,
            cost_before=cost_before,
            cost_after=cost_after,
            loads_after=snapshot,
        )
    )
