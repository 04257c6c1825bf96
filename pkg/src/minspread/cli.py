"""Command-line interface: ``minspread {spread,code,check,weights,verify-paper}``.

Exit codes: 0 success / Minimal, 1 NotMinimal (or a failing suite row),
2 bad input, 3 Inconclusive, 4 the checkers contradict each other.
"""

from __future__ import annotations

import argparse
import json
import sys

from minspread.code import (
    DefiningSet,
    RankError,
    defining_set,
    distribution_pairs,
    generator_matrix_text,
    weight_distribution,
)
from minspread.field import make_field
from minspread.minimality import (
    SizeGuardError,
    Verdict,
    ab_bound,
    check_bruteforce,
    check_geometric,
)
from minspread.spread import (
    PartialSpread,
    SpreadNotReached,
    desarguesian_spread,
    eb_family,
    random_partial_spread,
    subfamily,
    thm34_spread,
)
from minspread.suite import ROWS, run_suite

FAMILIES = ("desarguesian", "eb", "thm34", "random")
EXIT = {Verdict.MINIMAL: 0, Verdict.NOT_MINIMAL: 1, Verdict.INCONCLUSIVE: 3}


class UsageError(Exception):
    pass


class Contradiction(Exception):
    pass


def parse_subset(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"--subset expects comma-separated element codes, got {text!r}") from exc


def build_spread(args) -> PartialSpread:
    if args.family is None:
        raise UsageError("give --in or --family")
    if args.k is None:
        raise UsageError("--k is required with --family")
    F = make_field(args.p, args.e)
    if args.family == "desarguesian":
        sp = desarguesian_spread(F, args.k)
        return sp if args.s is None else subfamily(sp, range(args.s))
    if args.family == "eb":
        S = parse_subset(args.subset) if args.subset else None
        return eb_family(F, args.k, S)
    if args.family == "thm34":
        return thm34_spread(F, args.k)
    if args.s is None:
        raise UsageError("--family random needs --s")
    return random_partial_spread(F, args.k, args.s, args.seed)


def read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def load_code(args) -> DefiningSet:
    if args.input:
        obj = read_json(args.input)
        if "defining_set" in obj:
            return DefiningSet.from_json(obj)
        if "members" in obj:
            return defining_set(PartialSpread.from_json(obj))
        raise UsageError(f"{args.input}: neither a code nor a spread document")
    return defining_set(build_spread(args))


def emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dump(obj) -> str:
    return json.dumps(obj) + "\n"


def report_table(reports: dict) -> str:
    lines = [f"{'method':<12} {'verdict':<13} {'witness':<20} certificate"]
    for name, r in reports.items():
        if r is None:
            lines.append(f"{name:<12} {'skipped':<13}")
            continue
        w = "-" if r.witness is None else " ".join(map(str, r.witness.tolist()))
        c = "-" if r.certificate is None else " ".join(map(str, r.certificate.tolist()))
        lines.append(f"{name:<12} {r.verdict.value:<13} {w:<20} {c}")
    return "\n".join(lines) + "\n"


# -- subcommands --------------------------------------------------------------


def cmd_spread(args) -> int:
    emit(args, dump(build_spread(args).to_json()))
    return 0


def cmd_code(args) -> int:
    D = load_code(args)
    emit(args, generator_matrix_text(D) if args.format == "matrix" else dump(D.to_json()))
    return 0


def cmd_check(args) -> int:
    D = load_code(args)
    D.require_full_rank()
    if args.method == "geometric":
        r = check_geometric(D, args.threads)
    elif args.method == "bruteforce":
        r = check_bruteforce(D)
    elif args.method == "ab":
        r = ab_bound(weight_distribution(D, args.threads), D.field)
    else:
        return check_all(args, D)
    emit(args, report_table({r.method: r}) if args.format == "table" else dump(r.to_json()))
    return EXIT[r.verdict]


def check_all(args, D: DefiningSet) -> int:
    reports = {"ab": ab_bound(weight_distribution(D, args.threads), D.field)}
    reports["geometric"] = check_geometric(D, args.threads)
    try:
        reports["bruteforce"] = check_bruteforce(D)
    except SizeGuardError as exc:
        print(f"bruteforce skipped: {exc}", file=sys.stderr)
        reports["bruteforce"] = None
    g, b, ab = reports["geometric"], reports["bruteforce"], reports["ab"]
    if ab.minimal and not g.minimal:
        raise Contradiction("ab_bound says Minimal but the geometric check does not")
    if b is not None and b.verdict is not g.verdict:
        raise Contradiction(f"geometric {g.verdict.value} vs bruteforce {b.verdict.value}")
    if args.format == "table":
        emit(args, report_table(reports))
    else:
        emit(args, dump({k: None if r is None else r.to_json() for k, r in reports.items()}))
    return EXIT[g.verdict]


def cmd_weights(args) -> int:
    D = load_code(args)
    pairs = distribution_pairs(weight_distribution(D, args.threads))
    if args.format == "table":
        emit(args, "".join(f"{w}\t{c}\n" for w, c in pairs))
    else:
        emit(args, json.dumps(pairs) + "\n")
    return 0


def cmd_verify_paper(args) -> int:
    rows = [r.strip() for r in args.rows.split(",")] if args.rows else None
    results = run_suite(rows)
    ok = all(r.passed for r in results)
    if args.format == "json":
        emit(args, dump({"passed": ok, "rows": [r.to_json() for r in results]}))
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'}  {r.criterion:>2}  {r.row:<13} {r.seconds:6.2f}s  "
            + ("; ".join(r.details[:3]))
            for r in results
        ]
        emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="field characteristic")
    common.add_argument("--e", type=int, default=1, help="extension degree (q = p^e)")
    common.add_argument("--k", type=int, help="member dimension; ambient m = 2k")
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--s", type=int, help="number of members")
    common.add_argument("--subset", help="eb scalars as comma-separated element codes")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--in", dest="input", help="input JSON (code or spread), '-' for stdin")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(prog="minspread", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spread", parents=[common], help="emit a partial spread as JSON")
    p = sub.add_parser("code", parents=[common], help="emit the code C(D) of a spread")
    p.add_argument("--format", choices=("json", "matrix"), default="json")
    p = sub.add_parser("check", parents=[common], help="decide minimality")
    p.add_argument("--method", choices=("geometric", "bruteforce", "ab", "all"), default="geometric")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p = sub.add_parser("weights", parents=[common], help="weight distribution")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p = sub.add_parser("verify-paper", parents=[common], help="run the theorem suite")
    p.add_argument("--rows", help=f"comma-separated subset of {','.join(ROWS)}")
    p.add_argument("--format", choices=("json", "table"), default="table")
    return parser


COMMANDS = {
    "spread": cmd_spread,
    "code": cmd_code,
    "check": cmd_check,
    "weights": cmd_weights,
    "verify-paper": cmd_verify_paper,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except Contradiction as exc:
        print(f"error: checkers disagree: {exc}", file=sys.stderr)
        return 4
    except (UsageError, ValueError, KeyError, TypeError, OSError, SpreadNotReached, RankError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
