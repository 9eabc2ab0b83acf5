"""Singleton congestion games with a budget-constrained adversary.

Exact-rational solvers for approximate pure Nash equilibria: an incremental
insertion solver that always reaches a ~1.1974-approximate equilibrium, an
instance-optimal factor solver based on load-shape enumeration, and a
brute-force oracle for cross-validation at small scale.
"""

from .core import (
    AWAY_FROM_ZERO,
    EmptyGame,
    EmptyResources,
    EmptySource,
    ExtendedRational,
    GameError,
    INFINITY,
    Instance,
    KConstant,
    NegativeCoefficient,
    NonPositiveBudget,
    NonPositivePlayers,
    SameResource,
    TOWARD_ZERO,
    UnoccupiedResource,
    attack,
    binding_deviation,
    compute_K,
    deviation_cost,
    is_alpha_pne,
    k_upper_bound,
    needed_alpha,
    resource_cost,
    scale_instance,
    validate_instance,
)
from .documents import (
    FIXTURE_NAMES,
    InstanceDocument,
    ParseError,
    format_rational,
    generate_instance,
    load_instance_document,
    make_fixtures,
    parse_instance_document,
    parse_rational,
)
from .optimal import OptResult, ShapeConfig, best_alpha, candidate_alphas, feasible_load_vector
from .oracle import (
    count_profiles,
    enumerate_profiles,
    oracle_best_additive_epsilon,
    oracle_best_alpha,
    oracle_has_exact_pne,
)
from .solver import (
    DEVIATION,
    GuardExceeded,
    LENIENT,
    PLAYER_ADDED,
    NoUnhappyPlayers,
    STRICT,
    SolveTrace,
    SolverConfig,
    TraceEvent,
    best_response,
    select_deviator,
    solve,
    unhappy_set,
)

__version__ = "0.1.0"

__all__ = [
    "AWAY_FROM_ZERO",
    "DEVIATION",
    "PLAYER_ADDED",
    "EmptyGame",
    "EmptyResources",
    "EmptySource",
    "ExtendedRational",
    "FIXTURE_NAMES",
    "GameError",
    "GuardExceeded",
    "INFINITY",
    "Instance",
    "InstanceDocument",
    "KConstant",
    "LENIENT",
    "NegativeCoefficient",
    "NoUnhappyPlayers",
    "NonPositiveBudget",
    "NonPositivePlayers",
    "OptResult",
    "ParseError",
    "STRICT",
    "SameResource",
    "ShapeConfig",
    "SolveTrace",
    "SolverConfig",
    "TOWARD_ZERO",
    "TraceEvent",
    "UnoccupiedResource",
    "attack",
    "best_alpha",
    "best_response",
    "binding_deviation",
    "candidate_alphas",
    "compute_K",
    "count_profiles",
    "deviation_cost",
    "enumerate_profiles",
    "feasible_load_vector",
    "format_rational",
    "generate_instance",
    "is_alpha_pne",
    "k_upper_bound",
    "load_instance_document",
    "make_fixtures",
    "needed_alpha",
    "oracle_best_additive_epsilon",
    "oracle_best_alpha",
    "oracle_has_exact_pne",
    "parse_instance_document",
    "parse_rational",
    "resource_cost",
    "scale_instance",
    "select_deviator",
    "solve",
    "unhappy_set",
    "validate_instance",
]
