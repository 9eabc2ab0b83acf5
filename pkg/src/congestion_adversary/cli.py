"""Command-line front end.

Subcommands: solve-k, best-alpha, verify, oracle, gen, fixtures.  Results are
JSON on stdout (``--pretty`` for indented output); diagnostics go to stderr.

Exit codes: 0 success (verify: profile passes), 1 verify failure, 2 malformed
input or refused parameters, 3 solver guard exceeded, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional

from .core import (
    GameError,
    binding_deviation,
    is_alpha_pne,
    needed_alpha,
)
from .documents import (
    ParseError,
    format_rational,
    generate_instance,
    load_instance_document,
    make_fixtures,
    parse_rational,
    result_document,
    trace_to_json,
)
from .optimal import best_alpha
from .oracle import (
    oracle_best_additive_epsilon,
    oracle_best_alpha,
    oracle_has_exact_pne,
)
from .solver import GuardExceeded, SolverConfig, solve

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_ORACLE_MISMATCH = 4

ORACLE_MAX_PLAYERS = 25


def _emit(obj: dict, pretty: bool) -> None:
    print(json.dumps(obj, indent=2 if pretty else None))


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def cmd_solve_k(args) -> int:
    try:
        doc = load_instance_document(args.instance)
    except ParseError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    config = SolverConfig.default(precision=args.precision, guard_mode=args.guard)
    start = time.perf_counter()
    try:
        loads, trace = solve(doc.instance, config)
    except GuardExceeded as exc:
        return _fail(EXIT_GUARD, f"error: {exc}")
    elapsed = (time.perf_counter() - start) * 1000
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as handle:
            json.dump(trace_to_json(trace), handle, indent=2)
    _emit(
        result_document(
            loads,
            solver="incremental",
            elapsed_ms=elapsed,
            alpha=config.alpha,
            needed=needed_alpha(doc.instance, loads),
            trace=None if args.trace else trace,
        ),
        args.pretty,
    )
    return EXIT_OK


def cmd_best_alpha(args) -> int:
    try:
        doc = load_instance_document(args.instance)
    except ParseError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    inst = doc.instance
    if args.oracle_check and (inst.n > 12 or inst.m > 5):
        return _fail(
            EXIT_PARSE,
            f"error: --oracle-check refuses n > 12 or m > 5 (got n={inst.n}, m={inst.m})",
        )
    start = time.perf_counter()
    result = best_alpha(inst)
    elapsed = (time.perf_counter() - start) * 1000
    if args.oracle_check:
        oracle_value, oracle_witness = oracle_best_alpha(inst)
        if oracle_value != result.alpha_star or not is_alpha_pne(
            inst, oracle_witness, result.alpha_star
        ):
            return _fail(
                EXIT_ORACLE_MISMATCH,
                f"error: solver found {result.alpha_star} but oracle found "
                f"{oracle_value}; this indicates a bug",
            )
    binding = result.binding
    _emit(
        result_document(
            result.witness,
            solver="shape-enumeration",
            elapsed_ms=elapsed,
            alpha=result.alpha_star,
            binding=None
            if binding is None
            else {
                "from": binding[1],
                "to": binding[2],
                "cost": format_rational(binding[3]),
                "deviation_cost": format_rational(binding[4]),
            },
        ),
        args.pretty,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        doc = load_instance_document(args.instance)
        loads = [int(part) for part in args.loads.split(",")]
        alpha = parse_rational(args.alpha)
    except (ParseError, ValueError) as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    inst = doc.instance
    if (
        len(loads) != inst.m
        or any(x < 0 for x in loads)
        or sum(loads) != inst.n
        or alpha < 1
    ):
        return _fail(
            EXIT_PARSE,
            f"error: loads must be {inst.m} non-negative integers summing to "
            f"{inst.n} and alpha must be >= 1",
        )
    ok = is_alpha_pne(inst, loads, alpha)
    obj = {"loads": loads, "alpha": format_rational(alpha), "is_alpha_pne": ok}
    if not ok:
        from .documents import _extended_rational_str

        ratio, source, target, cost, dev = binding_deviation(inst, loads)
        obj["violation"] = {
            "from": source,
            "to": target,
            "cost": format_rational(cost),
            "deviation_cost": format_rational(dev),
            "ratio": _extended_rational_str(ratio),
        }
    _emit(obj, args.pretty)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_oracle(args) -> int:
    try:
        doc = load_instance_document(args.instance)
    except ParseError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    inst = doc.instance
    if inst.n > ORACLE_MAX_PLAYERS:
        return _fail(
            EXIT_PARSE,
            f"error: oracle refuses n > {ORACLE_MAX_PLAYERS} (got n={inst.n})",
        )
    start = time.perf_counter()
    value, witness = oracle_best_alpha(inst)
    exact, exact_witness = oracle_has_exact_pne(inst)
    epsilon, epsilon_witness = oracle_best_additive_epsilon(inst)
    elapsed = (time.perf_counter() - start) * 1000
    obj = result_document(
        witness,
        solver="oracle",
        elapsed_ms=elapsed,
        alpha=value,
        exact_pne=exact,
        exact_pne_loads=None if exact_witness is None else list(exact_witness),
        epsilon=format_rational(epsilon),
        epsilon_loads=list(epsilon_witness),
    )
    _emit(obj, args.pretty)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        doc = generate_instance(
            args.n, args.m, args.seed, args.coeff_max, args.budget_max
        )
    except ParseError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    print(doc.dumps(pretty=args.pretty))
    return EXIT_OK


def cmd_fixtures(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    written = []
    for name, doc in make_fixtures().items():
        path = os.path.join(args.out_dir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(doc.dumps(pretty=True))
            handle.write("\n")
        written.append(path)
    _emit({"written": written}, args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congestion-adversary",
        description="Solvers for singleton congestion games with a budgeted adversary.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pretty(p):
        p.add_argument(
            "--pretty", action="store_true", help="indent JSON output"
        )

    p = sub.add_parser("solve-k", help="compute a threshold-approximate equilibrium")
    p.add_argument("instance", help="path to an instance JSON document")
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--guard", choices=["strict", "lenient"], default="lenient")
    p.add_argument("--trace", help="write the event trace to this path")
    add_pretty(p)
    p.set_defaults(func=cmd_solve_k)

    p = sub.add_parser("best-alpha", help="compute the instance-optimal factor")
    p.add_argument("instance")
    p.add_argument(
        "--oracle-check",
        action="store_true",
        help="cross-check against the brute-force oracle (small instances only)",
    )
    add_pretty(p)
    p.set_defaults(func=cmd_best_alpha)

    p = sub.add_parser("verify", help="check a load profile against a factor")
    p.add_argument("instance")
    p.add_argument("loads", help="comma-separated loads, e.g. 2,2,1")
    p.add_argument("alpha", help="rational factor, e.g. 7/6")
    add_pretty(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force optimum, exact-equilibrium test, additive slack")
    p.add_argument("instance")
    add_pretty(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit a deterministic random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coeff-max", type=int, default=10)
    p.add_argument("--budget-max", type=int, default=10)
    add_pretty(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fixtures", help="write the canonical instances")
    p.add_argument("out_dir")
    add_pretty(p)
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GameError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
