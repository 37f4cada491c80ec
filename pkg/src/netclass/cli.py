"""Command line entry point.

    netclass class --s 2 [--json] [--show-steps]
    netclass verify (--s S | --all-up-to K) [--json]
    netclass count castelnuovo --g 6 --r 2 --d 6
    netclass count ramified --g 4 --r 2 --d 5 --alpha 0,0,1
    netclass count plucker --g 6 --d 6

Exit codes: 0 success, 1 a verification check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bn, pipeline
from .errors import InputError, VerificationError
from .ring import RingElement

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def fmt_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def to_json(x):
    """Exact, JSON-ready form: rationals become ``"p/q"`` strings."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, Fraction)):
        return fmt_rational(x)
    if isinstance(x, RingElement):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    return str(x)


def check_json(ch: pipeline.Check) -> dict:
    out = {
        "name": ch.name,
        "expected": to_json(ch.expected),
        "actual": to_json(ch.actual),
        "pass": ch.passed,
    }
    if ch.detail:
        out["detail"] = ch.detail
    return out


def class_outputs(dc: pipeline.DivisorClass) -> dict:
    return {
        "genus": dc.genus,
        "lambda": to_json(dc.lambda_),
        "psi": to_json(dc.psi),
        "delta": [to_json(x) for x in dc.deltas],
    }


def steps_json(steps: pipeline.YLocusSteps) -> dict:
    return {
        "ch_M": str(steps.ch_M),
        "c_M": [str(steps.c_M[k]) for k in (1, 2, 3)],
        "e_classes": [str(e) for e in steps.e_classes],
        "Y_bracket": str(steps.bracket),
        "Y_degree": fmt_rational(steps.degree),
    }


def _emit(report: dict, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return n


def _nonneg(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value!r}")
    return n


def _int_list(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {value!r}")


def cmd_class(args, command: str) -> int:
    report = pipeline.run_pipeline(args.s)
    dc = report.divisor_class
    out = {
        "command": command,
        "inputs": {"s": args.s, "g": 3 * args.s, "d": 2 * args.s + 2},
        "outputs": class_outputs(dc),
        "checks": [check_json(c) for c in report.checks],
    }
    lines = [f"s = {args.s}, g = {dc.genus}, d = {2 * args.s + 2}", f"class: {dc}"]
    names = ["lambda", "psi"] + [f"delta{i}" for i in range(dc.genus)]
    for n, x in zip(names, dc.vector()):
        lines.append(f"  {n:<8} {'unknown' if x is None else x}")
    if args.show_steps:
        out["steps"] = steps_json(report.steps)
        lines.append("steps:")
        lines += [f"  {k}: {v}" for k, v in out["steps"].items()]
    failed = report.failures()
    for ch in failed:
        lines.append(f"FAIL {ch.name}: {ch.detail or ch.actual}")
    _emit(out, args.json, lines)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_verify(args, command: str) -> int:
    values = [args.s] if args.s is not None else list(range(1, args.all_up_to + 1))
    checks = []
    for s in values:
        checks += pipeline.run_pipeline(s).checks
    checks += pipeline.global_checks()
    failed = [c for c in checks if not c.passed]
    out = {
        "command": command,
        "inputs": {"s": values},
        "outputs": {"checks_run": len(checks), "failures": len(failed)},
        "checks": [check_json(c) for c in checks],
    }
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" for c in checks]
    lines += [f"FAIL {c.name}: {c.detail or f'expected {c.expected}, got {c.actual}'}" for c in failed]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    _emit(out, args.json, lines)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_count(args, command: str) -> int:
    warnings = []
    if args.kind == "castelnuovo":
        value = bn.castelnuovo(args.g, args.r, args.d)
        inputs = {"g": args.g, "r": args.r, "d": args.d}
    elif args.kind == "ramified":
        value = bn.count_ramified(args.g, args.r, args.d, args.alpha)
        inputs = {"g": args.g, "r": args.r, "d": args.d, "alpha": list(args.alpha)}
        rho = bn.rho(args.g, args.r, args.d, args.alpha)
        if rho != 0:
            warnings.append(f"adjusted Brill-Noether number is {rho}, not 0")
    else:
        value = Fraction(bn.plucker_double_points(args.g, args.d))
        inputs = {"g": args.g, "d": args.d}
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    out = {
        "command": command,
        "inputs": inputs,
        "outputs": {args.kind: fmt_rational(value)},
        "warnings": warnings,
        "checks": [],
    }
    _emit(out, args.json, [str(value)])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("class", help="divisor class for g = 3s, d = 2s + 2")
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--show-steps", action="store_true")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("verify", help="run every consistency check")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--s", type=_positive)
    group.add_argument("--all-up-to", type=_positive)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="Brill-Noether counts")
    kinds = p.add_subparsers(dest="kind", required=True)
    for kind in ("castelnuovo", "ramified", "plucker"):
        k = kinds.add_parser(kind)
        k.add_argument("--g", type=_nonneg, required=True)
        if kind != "plucker":
            k.add_argument("--r", type=_nonneg, required=True)
        k.add_argument("--d", type=_nonneg, required=True)
        if kind == "ramified":
            k.add_argument("--alpha", type=_int_list, required=True)
        k.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, " ".join(argv))
    except InputError as exc:
        print(f"netclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"netclass: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
