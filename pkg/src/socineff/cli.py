"""Command-line interface: ``python -m socineff <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import axioms, experiments
from .context import DEFAULT_CAP, Context, Lottery, make_context
from .errors import GuardError, InputError, ParseError, SizeLimitExceeded
from .frontier import frontier_summary
from .inefficiency import ihat
from .matching import (
    AllocationProblem,
    allocation_inefficiency,
    find_min_pareto_match,
    make_problem,
    matching_name,
    rsd_exact,
    rsd_sample,
)
from .matching.mechanisms import RSD_EXACT_MAX_N
from .scalar import EXACT, MODES, format_scalar, to_scalar

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc


def _matrix(doc: dict, path: str, names_key: str, mode: str, coerce: bool):
    if not isinstance(doc, dict) or names_key not in doc or "utilities" not in doc:
        raise ParseError(f"{path}: expected an object with {names_key!r} and 'utilities'")
    names, rows = doc[names_key], doc["utilities"]
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise ParseError(f"{path}: {names_key!r} must be a list of strings")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{path}: 'utilities' must be a list of rows")
    return names, [[to_scalar(v, mode, coerce=coerce) for v in r] for r in rows]


def load_context(path: str, mode: str = EXACT, coerce: bool = False) -> Context:
    names, rows = _matrix(_load_json(path), path, "alternatives", mode, coerce)
    return make_context(names, rows, mode)


def load_lottery(path: str, c: Context, coerce: bool = False) -> Lottery:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: a lottery is an object mapping alternative names to probabilities")
    weights = {c.index(name): to_scalar(q, c.mode, coerce=coerce) for name, q in doc.items()}
    return Lottery.from_mapping(c.m, weights, c.mode)


def load_allocation(path: str, mode: str = EXACT, coerce: bool = False) -> AllocationProblem:
    names, rows = _matrix(_load_json(path), path, "objects", mode, coerce)
    return make_problem(names, rows, mode)


def _check_cap(c: Context, cap: int) -> None:
    if c.m > cap:
        raise SizeLimitExceeded(f"context has {c.m} alternatives, over the cap of {cap} (raise --cap)")


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    return ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in [header, *rows]]


def cmd_frontier(args) -> int:
    c = load_context(args.context, args.mode, args.coerce)
    _check_cap(c, args.cap)
    s = frontier_summary(c)
    out = ["efficient: " + " ".join(c.names[a] for a in sorted(s.efficient_pure))]
    rows = [
        (str(i), format_scalar(lo), format_scalar(hi), "yes" if flat else "no")
        for i, (lo, hi, flat) in enumerate(zip(s.u_min, s.u_max, s.frontier_indifferent))
    ]
    out += _table(("individual", "u_min", "u_max", "indifferent"), rows)
    out.append(f"dimension: {s.frontier_dimension}")
    print("\n".join(out))
    return EXIT_OK


def cmd_inefficiency(args) -> int:
    c = load_context(args.context, args.mode, args.coerce)
    _check_cap(c, args.cap)
    x = load_lottery(args.lottery, c, args.coerce)
    r = ihat(c, x)
    line = format_scalar(r.value)
    if r.infinite:
        line += f" (individual {r.witness} is frontier-indifferent and strictly worse off than on the frontier)"
    print(line)
    return EXIT_OK


def cmd_axioms(args) -> int:
    variant = axioms.Variant.parse(args.variant)
    battery = axioms.default_battery(args.seed)
    row = axioms.independence_row(variant, battery)
    expected = axioms.expected_row(variant)
    lines = []
    for ax, report in row.items():
        note = "" if report.verdict == expected[ax] else f"  (expected {expected[ax]})"
        lines.append(f"{ax.value}: {report.verdict}{note}")
    print("\n".join(lines))
    matches = all(report.verdict == expected[ax] for ax, report in row.items())
    return EXIT_OK if matches else EXIT_MISMATCH


def cmd_rsd(args) -> int:
    p = load_allocation(args.allocation, args.mode, args.coerce)
    if args.samples is not None:
        if args.seed is None:
            raise InputError("sampling needs --seed")
        lottery = rsd_sample(p, args.samples, args.seed)
    else:
        if p.n > RSD_EXACT_MAX_N:
            raise SizeLimitExceeded(f"exact RSD is limited to n <= {RSD_EXACT_MAX_N}; use --samples N --seed S")
        lottery = rsd_exact(p)
    out = _table(("matching", "probability"), [(matching_name(p, m), format_scalar(q)) for m, q in lottery.outcomes])
    out.append("inefficiency: " + format_scalar(allocation_inefficiency(p, lottery)))
    print("\n".join(out))
    return EXIT_OK


def cmd_min_pareto_match(args) -> int:
    p = load_allocation(args.allocation, args.mode, args.coerce)
    print(p.objects[find_min_pareto_match(p, args.individual)])
    return EXIT_OK


def parse_ns(text: str) -> list[int]:
    """``"2..5"`` or ``"2,3,7"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"bad size list {text!r}; use 2..5 or 2,3,5") from exc


def cmd_bounds(args) -> int:
    ns = parse_ns(args.ns)
    eps = to_scalar(args.eps)
    if args.family == "lower":
        rows = experiments.lower_bound_curve(ns, eps)
    else:
        if args.seed is None:
            raise InputError("the ur-eps sweep needs --seed")
        rows = experiments.upper_bound_sweep(
            ns, eps, args.trials, args.seed, instances=args.instances, exact=args.exact, family="ur-eps"
        )
    text = experiments.rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_report(args) -> int:
    report = experiments.optimality_report(
        parse_ns(args.ns), to_scalar(args.eps), args.trials, args.seed, instances=args.instances, exact=not args.sampled
    )
    sys.stdout.write(report.render())
    return EXIT_OK


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--mode", choices=MODES, default=EXACT)
    sp.add_argument("--coerce", action="store_true", help="accept p/q strings in float mode")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of alternatives")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="socineff", description="Social inefficiency of lotteries and RSD allocation.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("frontier", help="efficient alternatives and frontier ranges of a context")
    sp.add_argument("context")
    _common(sp)
    sp.set_defaults(func=cmd_frontier)

    sp = sub.add_parser("inefficiency", help="inefficiency of a lottery in a context")
    sp.add_argument("context")
    sp.add_argument("lottery")
    _common(sp)
    sp.set_defaults(func=cmd_inefficiency)

    sp = sub.add_parser("axioms", help="run the axiom battery on one inefficiency variant")
    sp.add_argument("variant", help="one of: " + ", ".join(v.value for v in axioms.Variant))
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("rsd", help="RSD outcome and its inefficiency for an allocation problem")
    sp.add_argument("allocation")
    sp.add_argument("--samples", "--trials", dest="samples", type=int, help="Monte Carlo trials instead of exact enumeration")
    sp.add_argument("--seed", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_rsd)

    sp = sub.add_parser("min-pareto-match", help="least preferred object an individual gets in a PO matching")
    sp.add_argument("allocation")
    sp.add_argument("individual", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_min_pareto_match)

    sp = sub.add_parser("bounds", help="CSV of measured RSD inefficiency on an instance family")
    sp.add_argument("family", choices=("lower", "ur-eps"))
    sp.add_argument("--ns", default="2..4", help="sizes, e.g. 2..6 or 2,4,8")
    sp.add_argument("--eps", default="1/1000")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--instances", type=int, default=10)
    sp.add_argument("--exact", action="store_true", help="exact RSD probabilities instead of sampling")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("report", help="measured values next to ln 2 and 1/(2 ln 2)")
    sp.add_argument("--ns", default="2..6")
    sp.add_argument("--eps", default="1/1000")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--instances", type=int, default=10)
    sp.add_argument("--sampled", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
