"""Command-line front end.

Every command prints a ``report-v1`` report on stdout: one ``key: value``
line per fact, or a single JSON object with ``--json``.  Exit codes:

    0  ok
    1  verification mismatch, or a failed self-test
    2  parse or validation error, or a missing file
    3  kind, family or prefix mismatch
    4  integer overflow
    5  enumeration budget or solver cap exceeded
    6  regret undefined (no solutions to compare against)
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Callable

from ssplift.acceptance import run_all
from ssplift.core import DEFAULT_BUDGET, FamilyMismatch, KindMismatch, ProblemKind, SspError, format_subset
from ssplift.games import solve_interdiction, solve_min_max_regret, solve_two_stage
from ssplift.generators import DEFAULT_SEED
from ssplift.lifting import gadget_interdiction, gadget_regret, gadget_two_stage, lift
from ssplift.problems import parse_instance, serialize_instance
from ssplift.qbf import parse_qbf
from ssplift.reductions import chain, find_path, verify_ssp
from ssplift.variants import parse_variant, serialize_variant

REPORT_VERSION = "report-v1"
GAMES = ("interdiction", "regret", "two-stage")
GAME_FAMILIES = {
    "interdiction": ("interdiction", "comb-interdiction"),
    "regret": ("regret", "restricted-regret"),
    "two-stage": ("two-stage", "comb-two-stage"),
}


class MissingFile(SspError):
    exit_code = 2


class Report:
    """Ordered key/value pairs, rendered as text lines or JSON."""

    def __init__(self, command: str):
        self.items: list[tuple[str, object]] = [("report", REPORT_VERSION), ("command", command)]

    def add(self, key: str, value: object) -> None:
        self.items.append((key, value))

    def extend_lines(self, lines: list[str]) -> None:
        """Add ``key: value`` lines, keeping integer values as integers."""
        for line in lines:
            key, _, value = line.partition(": ")
            self.add(key, int(value) if value.lstrip("-").isdigit() else value)

    def render(self, structured: bool) -> str:
        if structured:
            merged: dict[str, object] = {}
            for k, v in self.items:
                if k in merged:
                    previous = merged[k]
                    merged[k] = (previous if isinstance(previous, list) else [previous]) + [v]
                else:
                    merged[k] = v
            return json.dumps(merged) + "\n"
        return "".join(f"{k}: {_text(v)}\n" for k, v in self.items)


def _text(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise MissingFile(f"no such file: {path}")
    return p.read_text()


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()[:16]


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# commands


def cmd_reduce(args, report: Report) -> int:
    text = _read(args.input)
    x = parse_instance(text)
    source = ProblemKind.from_id(args.source) if args.source else x.kind
    if x.kind is not source:
        raise KindMismatch(f"input is {x.kind.value}, --from says {source.value}")
    if args.via:
        ids = [i for i in args.via.split(",") if i]
    elif args.target:
        ids = find_path(source, ProblemKind.from_id(args.target))
    else:
        raise KindMismatch("give --to or --via")
    r = chain(ids)
    if args.target and r.target is not ProblemKind.from_id(args.target):
        raise KindMismatch(f"path ends at {r.target.value}, --to says {args.target}")
    y, f = r.apply(x)
    out = serialize_instance(y)
    if args.output:
        _write(args.output, out)
    if args.emit_embedding:
        Path(args.emit_embedding).write_text(f.serialize())
    report.add("input", f"{args.input} {_digest(text)}")
    report.add("reduction", r.id)
    report.add("target-kind", y.kind.value)
    report.add("target-size", len(y.universe()))
    report.add("output", f"{args.output or 'not written'} {_digest(out)}")
    report.add("status", "ok")
    return 0


def cmd_verify(args, report: Report) -> int:
    text = _read(args.input)
    x = parse_instance(text)
    r = chain([i for i in args.reduction.split(",") if i])
    result = verify_ssp(r, x, args.budget)
    report.add("input", f"{args.input} {_digest(text)}")
    report.add("reduction", r.id)
    report.add("budget", args.budget)
    report.extend_lines(result.lines())
    return {"ok": 0, "mismatch": 1, "budget-exceeded": 5}[result.status]


def cmd_solve(args, report: Report) -> int:
    text = _read(args.input)
    v = parse_variant(text)
    if v.family not in GAME_FAMILIES[args.game]:
        raise FamilyMismatch(f"--game {args.game} cannot solve a {v.family} instance")
    solver: Callable = {"interdiction": solve_interdiction, "regret": solve_min_max_regret,
                        "two-stage": solve_two_stage}[args.game]
    value = solver(v, args.budget)
    report.add("input", f"{args.input} {_digest(text)}")
    report.add("family", v.family)
    for note in getattr(v, "diagnostics", ()):
        report.add("diagnostic", note)
    report.add("decision", "yes" if value.decision else "no")
    report.add("value", value.value)
    report.add("witness", None if value.witness is None else format_subset(value.witness))
    report.add("status", "ok")
    return 0


def cmd_gadget(args, report: Report) -> int:
    text = _read(args.input)
    phi = parse_qbf(text)
    build = {"interdiction": gadget_interdiction, "regret": gadget_regret, "two-stage": gadget_two_stage}
    v = build[args.family](phi)
    out = serialize_variant(v)
    if args.output:
        _write(args.output, out)
    report.add("input", f"{args.input} {_digest(text)}")
    report.add("family", v.family)
    report.add("variables", v.base.payload.num_vars)
    report.add("clauses", len(v.base.payload.clauses))
    report.add("output", f"{args.output or 'not written'} {_digest(out)}")
    report.add("status", "ok")
    return 0


def cmd_lift(args, report: Report) -> int:
    text = _read(args.input)
    v = parse_variant(text)
    lifted = lift(chain([i for i in args.reduction.split(",") if i]), args.family)
    w, f = lifted.apply(v)
    out = serialize_variant(w)
    if args.output:
        _write(args.output, out)
    if args.emit_embedding:
        Path(args.emit_embedding).write_text(f.serialize())
    report.add("input", f"{args.input} {_digest(text)}")
    report.add("lifted", lifted.id)
    code = 0
    if args.check:
        check = lifted.verify(v, args.budget)
        report.extend_lines([f"verify-{line}" for line in check.lines()])
        code = {"ok": 0, "mismatch": 1, "budget-exceeded": 5}[check.status]
    report.add("output", f"{args.output or 'not written'} {_digest(out)}")
    report.add("status", "ok" if code == 0 else "check-failed")
    return code


def cmd_selftest(args, report: Report) -> int:
    results = run_all(args.seed)
    report.add("seed", args.seed)
    for res in results:
        report.add(f"criterion-{res.number}", res.line().split(": ", 1)[1])
    total = sum(r.seconds for r in results)
    report.add("total-seconds", f"{total:.1f}")
    ok = all(r.passed for r in results)
    report.add("status", "ok" if ok else "failed")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# entry point


def _common_flags(parser: argparse.ArgumentParser, default) -> None:
    """The shared flags, accepted before or after the subcommand."""
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="emit the report as one JSON object")
    parser.add_argument("--seed", type=int, default=default(DEFAULT_SEED),
                        help=f"fixture seed (default {DEFAULT_SEED})")
    parser.add_argument("--budget", type=int, default=default(DEFAULT_BUDGET),
                        help=f"enumeration budget per side (default {DEFAULT_BUDGET})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssplift", description="Solution-preserving reductions and robust variants.")
    _common_flags(parser, lambda value: value)
    shared = argparse.ArgumentParser(add_help=False)
    _common_flags(shared, lambda value: argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[shared], help="apply a reduction or a chain of reductions")
    p.add_argument("--from", dest="source")
    p.add_argument("--to", dest="target")
    p.add_argument("--via", help="comma-separated reduction ids")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output")
    p.add_argument("--emit-embedding")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("verify", parents=[shared], help="check the solution-preserving equation on one instance")
    p.add_argument("--reduction", required=True, help="reduction id or comma-separated chain")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("solve", parents=[shared], help="solve a variant instance by exhaustive play")
    p.add_argument("--game", choices=GAMES, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("gadget", parents=[shared], help="build a variant instance from a quantified formula")
    p.add_argument("--family", choices=GAMES, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output")
    p.set_defaults(run=cmd_gadget)

    p = sub.add_parser("lift", parents=[shared], help="carry a variant instance through a reduction")
    p.add_argument("--reduction", required=True)
    p.add_argument("--family", choices=("interdiction", "restricted-regret", "two-stage"), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output")
    p.add_argument("--emit-embedding")
    p.add_argument("--check", action="store_true", help="also verify the lifted pair")
    p.set_defaults(run=cmd_lift)

    p = sub.add_parser("selftest", parents=[shared], help="run the acceptance suite")
    p.set_defaults(run=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(args.command)
    try:
        code = args.run(args, report)
    except SspError as exc:
        report.add("status", "error")
        report.add("error", type(exc).__name__)
        report.add("message", str(exc))
        code = exc.exit_code
    report.add("exit", code)
    sys.stdout.write(report.render(args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
