"""Command-line interface: ``selrec check|eval|solve-spector|demo|validate``."""

from __future__ import annotations

import argparse
import json
import sys

from .barrec import default_fuel, run_deep
from .errors import ContractViolation, FuelExhausted, ParseError, SelrecError, ValidationError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_FUEL = 3


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _indices(text: str) -> range:
    """``A..B`` (inclusive) or a single ``N`` meaning ``0..N``."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
        else:
            lo, hi = 0, int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or N, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative index range {text!r}")
    return range(lo, hi + 1)


def _load(path: str):
    from .harness.instances import load_instance
    return load_instance(path)


def cmd_check(args) -> int:
    from .harness.suite import SuiteConfig, run_suite
    cfg = SuiteConfig(suite=args.suite, seeds=args.seeds, depth=args.depth,
                      fuel=args.fuel, report=args.report)
    try:
        status, report = run_suite(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for row in report["suites"]:
        mark = "PASS" if row["passed"] else "FAIL"
        print(f"{mark} suite {row['suite']}: {row['checks']} checks, "
              f"{len(row['failures'])} failures")
    for row in report["matrix"]:
        mark = "PASS" if row["passed"] else "FAIL"
        derived, native = row["pair"]
        print(f"{mark} {derived} vs {native}: {row['instances']} instances, "
              f"{len(row['failures'])} failures, fuel {row['fuel_used']}")
    print("overall:", "PASS" if status == 0 else "FAIL")
    return status


def cmd_eval(args) -> int:
    from .harness.matrix import evaluate
    spec = _load(args.instance)
    if args.fuel is not None:
        spec.fuel = args.fuel
    positions = args.indices or range(spec.depth)
    inst = spec.build()
    try:
        obs, used = run_deep(evaluate, args.recursor, inst, positions.stop)
    except FuelExhausted as exc:
        print(f"fuel exhausted: {exc}", file=sys.stderr)
        return EXIT_FUEL
    out = {"recursor": args.recursor, "fuel_used": used}
    if isinstance(obs, list):
        out["indices"] = [positions.start, positions.stop - 1]
        out["values"] = obs[positions.start:]
    else:
        out["result"] = obs
    _emit(out)
    return EXIT_OK


def cmd_solve_spector(args) -> int:
    from .barrec import Fuel
    from .spector import solve_spector_equations, verify_spector
    spec = _load(args.instance)
    inst = spec.build()

    def solve():
        sol = solve_spector_equations(inst.sel.at, inst.q, inst.omega, inst.x_card,
                                      fuel=Fuel(inst.fuel))
        return sol, verify_spector(sol, inst.sel.at, inst.q, inst.omega)

    try:
        sol, rows = run_deep(solve)
    except FuelExhausted as exc:
        print(f"fuel exhausted: {exc}", file=sys.stderr)
        return EXIT_FUEL
    _emit({"n": sol.n, "alpha": list(sol.alpha.take(max(spec.depth, sol.n + 1))),
           "p": list(sol.p), "equations": rows})
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_FAIL


def cmd_demo(args) -> int:
    from .harness.demos import demo_game, demo_search, random_predicate
    if args.which == "game":
        report = demo_game(args.depth, args.seed)
    else:
        report = run_deep(demo_search, random_predicate(args.depth, args.seed))
    _emit(report)
    return EXIT_OK if report["agrees"] else EXIT_FAIL


def cmd_validate(args) -> int:
    spec = _load(args.instance)
    _emit({"valid": True, "instance": spec.to_dict()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from .harness.suite import SUITE_NAMES
    from .harness.matrix import RECURSORS

    parser = argparse.ArgumentParser(
        prog="selrec",
        description="Products of selection functions and bar recursion on finite instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run property suites and the translation matrix")
    p.add_argument("--suite", default="all", choices=SUITE_NAMES)
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--depth", type=int, default=None,
                   help="sequence comparison depth (default SELREC_DEPTH or 20)")
    p.add_argument("--fuel", type=int, default=None,
                   help=f"fuel per evaluation (default SELREC_FUEL or {default_fuel()})")
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate one recursion scheme on an instance")
    p.add_argument("--recursor", required=True, choices=tuple(RECURSORS))
    p.add_argument("--instance", required=True)
    p.add_argument("--indices", type=_indices, default=None, metavar="A..B")
    p.add_argument("--fuel", type=int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve-spector", help="solve and verify Spector's equations")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_solve_spector)

    p = sub.add_parser("demo", help="backward-induction game or sequence search")
    p.add_argument("which", choices=("game", "search"))
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("validate", help="parse and validate an instance document")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, ContractViolation) as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FuelExhausted as exc:
        print(f"fuel exhausted: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except SelrecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
