"""Command-line interface: solve, check, oracle, gen and repro."""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import oracle
from .core import AlgorithmDefect, BudgetExceeded, InputError, Instance
from .generate import CLASSES, generate
from .io import (
    allocation_to_obj,
    decode_rational,
    dumps,
    encode_rational,
    load_allocation,
    load_payments,
    parse_instance,
    result_to_obj,
    serialize_instance,
    trace_to_obj,
)
from .repro import EXAMPLES, repro
from .solve import ALGORITHMS, check_property, certificate, solve, witness_to_obj

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_DEFECT = 3
EXIT_USAGE = 64

PROPERTIES = ("ef", "ef1", "efx", "pef1", "ce", "balanced", "po", "fpo")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _prop_list(text: str) -> list[str]:
    props = [p.strip().lower() for p in text.split(",") if p.strip()]
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown or not props:
        raise argparse.ArgumentTypeError(f"unknown property {unknown[0] if unknown else text!r}; "
                                         f"choose from {','.join(PROPERTIES)}")
    return props


def _class_name(text: str) -> str:
    return text.replace("_", "-").lower()


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable {name} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="choreq", description="Fair allocation of indivisible chores.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run a solver on an instance file")
    p.add_argument("--alg", required=True, choices=ALGORITHMS)
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--output", type=Path, help="write the result file here")
    p.add_argument("--trace", type=Path, help="write the event trace here")
    p.add_argument("--verify", action="store_true", help="certify the advertised properties")
    p.add_argument("--debug", action="store_true", help="check market invariants after every step")

    p = sub.add_parser("check", help="evaluate properties of a given allocation")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--alloc", required=True, type=Path)
    p.add_argument("--props", required=True, type=_prop_list)
    p.add_argument("--payments", type=Path)

    p = sub.add_parser("oracle", help="list every allocation with the given properties")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--find", required=True, type=_prop_list)
    p.add_argument("--payments", type=Path, help="needed for pef1")
    p.add_argument("--limit", type=int, help="largest n**m to enumerate (env CHOREQ_ENUM_LIMIT)")

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--class", dest="cls", required=True, type=_class_name, choices=CLASSES)
    p.add_argument("--agents", required=True, type=int)
    p.add_argument("--chores", required=True, type=int)
    p.add_argument("--k", help="high-to-low cost ratio, e.g. 5 or 7/2")
    p.add_argument("--seed", type=int, help="random seed (env CHOREQ_SEED, default 0)")
    p.add_argument("--output", required=True, type=Path)

    p = sub.add_parser("repro", help="replay a bundled worked example")
    p.add_argument("--example", required=True, choices=EXAMPLES)
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from exc


def _bundle_lines(inst: Instance, alloc) -> list[str]:
    lines = []
    for i, bundle in enumerate(alloc.bundles):
        cost = sum((inst.d(i, j) for j in bundle), Fraction(0))
        chores = " ".join(inst.chore_ids[j] for j in sorted(bundle)) or "-"
        lines.append(f"{inst.agent_ids[i]}: {chores}  cost {encode_rational(cost)}")
    return lines


def _report_lines(inst: Instance, reports) -> tuple[list[str], bool]:
    lines, ok = [], True
    for prop, report in reports.items():
        ok &= report.holds
        line = f"{prop}: {'pass' if report.holds else 'fail'}"
        if report.witness is not None:
            w = witness_to_obj(inst, report)["witness"]
            line += "  " + " ".join(f"{k}={v}" for k, v in sorted(w.items()))
        lines.append(line)
    return lines, ok


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.input))
    result = solve(args.alg, inst, debug=args.debug)
    print("\n".join(_bundle_lines(inst, result.allocation)))
    cert, status = {}, EXIT_OK
    if args.verify:
        reports = certificate(result)
        lines, ok = _report_lines(inst, reports)
        print("\n".join(lines))
        cert = {p: witness_to_obj(inst, r) for p, r in reports.items()}
        status = EXIT_OK if ok else EXIT_VERIFY
    trace = trace_to_obj(result.trace_instance, result.trace)
    if args.output:
        obj = result_to_obj(inst, result.allocation, result.payments, cert, None, args.alg)
        _write(args.output, dumps(obj))
    if args.trace:
        _write(args.trace, dumps(trace))
    return status


def _cmd_check(args) -> int:
    inst = parse_instance(_read(args.input))
    alloc = load_allocation(inst, _read(args.alloc))
    payments = load_payments(inst, _read(args.payments)) if args.payments else None
    reports = {p: check_property(inst, alloc, p, payments) for p in args.props}
    lines, ok = _report_lines(inst, reports)
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_oracle(args) -> int:
    inst = parse_instance(_read(args.input))
    payments = load_payments(inst, _read(args.payments)) if args.payments else None
    found = oracle.find_allocations(inst, args.find, payments, args.limit)
    print(f"{len(found)} allocation(s) satisfy {','.join(args.find)}")
    for alloc in found:
        print(" | ".join(f"{a}: {' '.join(cs) or '-'}" for a, cs in allocation_to_obj(inst, alloc).items()))
    return EXIT_OK


def _cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else (_env_int("CHOREQ_SEED") or 0)
    k = None
    if args.k is not None:
        k = decode_rational(args.k, "--k")
    inst = generate(args.cls, args.agents, args.chores, k=k, seed=seed)
    _write(args.output, serialize_instance(inst))
    return EXIT_OK


def _cmd_repro(args) -> int:
    report = repro(args.example)
    for step, event in enumerate(report.trace):
        info = " ".join(f"{k}={v}" for k, v in event.items() if k not in ("event", "allocation"))
        print(f"[{step}] {event['event']} {info}".rstrip())
    for check in report.checks:
        print(check.line())
    for note in report.notes:
        print(note)
    return EXIT_OK if report.passed else EXIT_VERIFY


_COMMANDS = {"solve": _cmd_solve, "check": _cmd_check, "oracle": _cmd_oracle,
             "gen": _cmd_gen, "repro": _cmd_repro}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AlgorithmDefect as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
