"""Command-line front end.

    softcommittee solve    [INPUT] [--trace] [--policy RULE] [-o OUT]
    softcommittee check    [INPUT] --committee c1,c2,... [-o OUT]
    softcommittee verify   [INPUT] [--cap N] [--workers N]
    softcommittee verify   --seed A..B [generator flags] [--cap N]
    softcommittee generate [--seed N] [generator flags] [-o OUT]

INPUT defaults to stdin ("-" also means stdin). Documents go to stdout (or -o),
diagnostics to stderr. Exit status: 0 on success or when the axioms hold,
1 when check/verify finds a violation, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from softcommittee.axioms import audit, require_size
from softcommittee.errors import InstanceError
from softcommittee.generator import GenParams, random_instance
from softcommittee.instance_io import (
    parse_instance,
    serialize_instance,
    serialize_result,
)
from softcommittee.oracle import DEFAULT_CAP, certify_solver
from softcommittee.solver import TYPE_RULES, TieBreakPolicy, solve

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

GEN_FLAGS = {
    # flag dest -> GenParams field
    "m": "m",
    "l": "n_types",
    "k": "k",
    "density": "density",
    "tightness": "tightness",
    "tie_prob": "tie_prob",
}


class UsageError(Exception):
    pass


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _int_or_range(text: str) -> int | tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None


def _gen_params(args: argparse.Namespace, seed: int) -> GenParams:
    fields: dict = {}
    if args.params:
        try:
            given = json.loads(args.params)
        except json.JSONDecodeError as e:
            raise UsageError(f"--params is not valid JSON: {e}") from None
        if not isinstance(given, dict):
            raise UsageError("--params must be a JSON object")
        for key, value in given.items():
            field = GEN_FLAGS.get(key, key)
            if field not in GEN_FLAGS.values():
                raise UsageError(f"unknown generator parameter {key!r}")
            fields[field] = tuple(value) if isinstance(value, list) else value
    for flag, field in GEN_FLAGS.items():
        value = getattr(args, flag)
        if value is None:
            continue
        if field in fields:
            raise UsageError(f"--{flag.replace('_', '-')} conflicts with the same key in --params")
        fields[field] = value
    return GenParams(seed=seed, **fields)


def cmd_solve(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.input))
    committee, trace, report = solve(instance, TieBreakPolicy(args.policy))
    _write(serialize_result(committee, trace if args.trace else None, report), args.output)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.input))
    members = [c.strip() for c in args.committee.split(",") if c.strip()]
    if len(set(members)) != len(members):
        raise UsageError("--committee lists a candidate twice")
    committee = require_size(instance, members)
    report = audit(instance, committee)
    _write(serialize_result(committee, None, report), args.output)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _certification_doc(cert) -> dict:
    return {
        "passed": cert.passed,
        "committee": sorted(cert.committee),
        "in_type_optimal": cert.in_type_optimal,
        "in_jef": cert.in_jef,
        "intersection": sorted(sorted(w) for w in cert.intersection),
    }


def cmd_verify(args: argparse.Namespace) -> int:
    policy = TieBreakPolicy(args.policy)
    if args.seed is None:
        if args.params or any(getattr(args, f) is not None for f in GEN_FLAGS):
            raise UsageError("generator flags need --seed")
        instance = parse_instance(_read(args.input))
        cert = certify_solver(instance, args.cap, policy, workers=args.workers)
        _write(_dump(_certification_doc(cert)), args.output)
        return EXIT_OK if cert.passed else EXIT_VIOLATION

    if args.input is not None:
        raise UsageError("give either an instance file or --seed, not both")
    lo, hi = args.seed if isinstance(args.seed, tuple) else (args.seed, args.seed)
    failures = []
    for seed in range(lo, hi + 1):
        cert = certify_solver(random_instance(_gen_params(args, seed)), args.cap, policy)
        if not cert.passed:
            failures.append({"seed": seed, **_certification_doc(cert)})
    count = hi - lo + 1
    _write(_dump({"instances": count, "passed": count - len(failures), "failures": failures}),
           args.output)
    return EXIT_OK if not failures else EXIT_VIOLATION


def cmd_generate(args: argparse.Namespace) -> int:
    seed = 0 if args.seed is None else args.seed
    if isinstance(seed, tuple):
        raise UsageError("generate takes a single --seed")
    _write(serialize_instance(random_instance(_gen_params(args, seed))), args.output)
    return EXIT_OK


def _add_gen_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=_int_or_range, help="number of candidates (N or LO..HI)")
    p.add_argument("--l", type=_int_or_range, help="number of types (N or LO..HI)")
    p.add_argument("--k", type=_int_or_range, help="committee size (N or LO..HI)")
    p.add_argument("--density", type=float, help="probability a candidate holds a type")
    p.add_argument("--tightness", type=float, help="quotas are drawn from 0..floor(tightness*k)")
    p.add_argument("--tie-prob", dest="tie_prob", type=float,
                   help="probability a candidate ties with the previous one")
    p.add_argument("--params", help="generator parameters as a JSON object")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softcommittee",
        description="Committee selection under soft lower quotas on candidate types.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="select a committee")
    p.add_argument("input", nargs="?", help="instance document (default: stdin)")
    p.add_argument("-o", "--output")
    p.add_argument("--trace", action="store_true", help="include the step-by-step trace")
    p.add_argument("--policy", choices=TYPE_RULES, default="lexicographic",
                   help="how the greedy stage picks among under-represented types")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="audit a given committee")
    p.add_argument("input", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--committee", required=True, help="comma-separated candidate ids")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="certify the solver against brute force")
    p.add_argument("input", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="largest number of committees to enumerate")
    p.add_argument("--workers", type=int, default=1, help="processes for enumeration")
    p.add_argument("--policy", choices=TYPE_RULES, default="lexicographic")
    p.add_argument("--seed", type=_int_or_range, help="seed or LO..HI batch of generated instances")
    _add_gen_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=_int_or_range)
    _add_gen_flags(p)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (InstanceError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
