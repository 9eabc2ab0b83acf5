"""JSON instance/result documents, canonical fixtures, and random instances.

Rationals are serialized as strings ("7/6", "-3", never floats) so documents
round-trip bit-exactly.  Instance documents produced here are canonical:
coefficients sorted non-decreasingly and rationals in lowest terms.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .core import GameError, Instance, compute_K, validate_instance
from .solver import SolveTrace

__all__ = [
    "RATIONAL_RE",
    "ParseError",
    "InstanceDocument",
    "parse_rational",
    "format_rational",
    "parse_instance_document",
    "load_instance_document",
    "result_document",
    "trace_to_json",
    "generate_instance",
    "make_fixtures",
    "FIXTURE_NAMES",
]

RATIONAL_RE = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")


class ParseError(ValueError):
    """Malformed instance document or rational string."""


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str) or not RATIONAL_RE.match(text):
        raise ParseError(f"not a rational string: {text!r}")
    return Fraction(text)


def format_rational(value: Union[Fraction, int]) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class InstanceDocument:
    instance: Instance
    name: Optional[str] = None
    description: Optional[str] = None

    def to_json_obj(self) -> dict:
        obj = {}
        if self.name is not None:
            obj["name"] = self.name
        if self.description is not None:
            obj["description"] = self.description
        obj.update(
            {
                "players": self.instance.n,
                "budget": format_rational(self.instance.budget),
                "coefficients": [
                    format_rational(a) for a in self.instance.coefficients
                ],
            }
        )
        return obj

    def dumps(self, pretty: bool = False) -> str:
        if pretty:
            return json.dumps(self.to_json_obj(), indent=2)
        return json.dumps(self.to_json_obj())


def parse_instance_document(obj: dict) -> InstanceDocument:
    if not isinstance(obj, dict):
        raise ParseError("instance document must be a JSON object")
    try:
        players = obj["players"]
        budget = obj["budget"]
        coefficients = obj["coefficients"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(players, int) or isinstance(players, bool):
        raise ParseError(f"players must be an integer, got {players!r}")
    if not isinstance(coefficients, list):
        raise ParseError("coefficients must be an array of rational strings")
    try:
        instance = validate_instance(
            [parse_rational(c) for c in coefficients],
            players,
            parse_rational(budget),
        )
    except GameError as exc:
        raise ParseError(str(exc)) from exc
    name = obj.get("name")
    description = obj.get("description")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string")
    if description is not None and not isinstance(description, str):
        raise ParseError("description must be a string")
    return InstanceDocument(instance=instance, name=name, description=description)


def load_instance_document(path: str) -> InstanceDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read instance from {path}: {exc}") from exc
    return parse_instance_document(obj)


def _extended_rational_str(value) -> str:
    if value == math.inf:
        return "inf"
    return format_rational(value)


def trace_to_json(trace: SolveTrace) -> List[dict]:
    return [
        {
            "kind": ev.kind,
            "round": ev.round,
            "from": ev.source,
            "to": ev.target,
            "cost_before": _extended_rational_str(ev.cost_before),
            "cost_after": format_rational(ev.cost_after),
            "loads_after": list(ev.loads_after),
        }
        for ev in trace.events
    ]


def result_document(
    loads: Sequence[int],
    solver: str,
    elapsed_ms: float,
    alpha: Optional[Fraction] = None,
    needed: Optional[object] = None,
    trace: Optional[SolveTrace] = None,
    **extra,
) -> dict:
    obj = {"loads": list(loads), "solver": solver}
    if alpha is not None:
        obj["alpha"] = format_rational(alpha)
    if needed is not None:
        obj["needed_alpha"] = _extended_rational_str(needed)
    if trace is not None:
        obj["trace"] = trace_to_json(trace)
    obj.update(extra)
    obj["elapsed_ms"] = round(elapsed_ms, 3)
    return obj


def generate_instance(
    n: int,
    m: int,
    seed: int,
    coeff_max: int = 10,
    budget_max: int = 10,
) -> InstanceDocument:
    """Deterministic pseudorandom instance for property suites and the CLI.

    Coefficients are rationals with numerator in [0, coeff_max] and
    denominator in [1, 4]; the budget has numerator in [1, budget_max].
    """
    if n < 1 or m < 1 or coeff_max < 0 or budget_max < 1:
        raise ParseError("generator parameters must be positive")
    rng = random.Random(seed)
    coefficients = [
        Fraction(rng.randint(0, coeff_max), rng.randint(1, 4)) for _ in range(m)
    ]
    budget = Fraction(rng.randint(1, budget_max), rng.randint(1, 4))
    instance = validate_instance(coefficients, n, budget)
    return InstanceDocument(
        instance=instance,
        name=f"random-n{n}-m{m}-seed{seed}",
    )


GRID = 10**12


def _tightness_coefficients():
    """12-digit rational approximations of the tightness coefficients.

    Both are rounded so that the instance's optimal factor stays at or below
    the threshold constant: the middle coefficient rounds down, the largest
    (the constant's reciprocal) rounds up.
    """
    k_lo = compute_K(15, "toward-zero").value
    a2 = Fraction(math.floor((k_lo / 2 - Fraction(1, 4)) * GRID), GRID)
    a3 = Fraction(math.ceil(GRID / k_lo), GRID)
    return Fraction(0), a2, a3


FIXTURE_NAMES = ("example1", "tightness", "appendix_a")


def make_fixtures() -> dict:
    """The canonical instances keyed by fixture name."""
    a1, a2, a3 = _tightness_coefficients()
    return {
        "example1": InstanceDocument(
            instance=validate_instance([0, 2, 5], 5, 6),
            name="example1",
            description="Five players, three resources, budget 6; "
            "no exact pure Nash equilibrium exists.",
        ),
        "tightness": InstanceDocument(
            instance=validate_instance([a1, a2, a3], 5, 1),
            name="tightness",
            description="Worst-case instance whose optimal factor approaches "
            "the universal threshold ~1.1974; irrational coefficients are "
            "approximated by rationals on a 10^-12 grid (middle rounded "
            "down, largest rounded up).",
        ),
        "appendix_a": InstanceDocument(
            instance=validate_instance([1, 4, 4, 10, 10], 7, 9),
            name="appendix_a",
            description="Seven players, five resources, budget 9; the "
            "incremental solver's final round performs exactly two "
            "deviations and ends in a 25/24-approximate equilibrium.",
        ),
    }
