"""Batch front end: capping weights, verification suites, label products.

Three subcommands.  ``alpha`` parses a tangle expression, validates the
diagram, and prints the capping weight with its loop bookkeeping.
``suite`` runs a named verification suite against an action and writes a
JSON report; the exit code says whether every record passed.
``multiply`` expands a product of two basis labels in the requested
basis.  Reports contain no timestamps, so the same configuration always
produces the same bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .crossed import CrossedProduct
from .expressions import ParseError, parse_expr, realize
from .group_algebra import AlgebraError
from .groups import GroupAction, GroupError, inversion_action, load_action
from .scalars import RadicalScalar
from .suites import SUITE_NAMES, SuiteError, run_suite, summarize
from .tangles import TangleError, alpha, capping_exponent, loops_black, validate

KMAX_LIMIT_ENV = "PLANARBOX_KMAX_HARD_LIMIT"
DEFAULT_KMAX = 4
DEFAULT_SAMPLES = 40

EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_INVALID_TANGLE = 3


def format_scalar(value: RadicalScalar) -> str:
    """Text form with parenthesized fractional coefficients.

    Differs from :meth:`RadicalScalar.render` only in wrapping non-integer
    coefficients of radicals, e.g. ``(1/2)*sqrt(2)`` instead of
    ``1/2*sqrt(2)``.
    """
    terms = value.terms
    if not terms:
        return "0"
    parts: list[str] = []
    for d in sorted(terms):
        c = terms[d]
        mag = abs(c)
        if d == 1:
            body = str(mag)
        elif mag == 1:
            body = f"sqrt({d})"
        elif mag.denominator == 1:
            body = f"{mag.numerator}*sqrt({d})"
        else:
            body = f"({mag})*sqrt({d})"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _hard_kmax_limit() -> int:
    raw = os.environ.get(KMAX_LIMIT_ENV, "5")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{KMAX_LIMIT_ENV} must be an integer, got {raw!r}")


def _load_action(path: str | None) -> GroupAction:
    if path is None:
        return inversion_action(3)
    spec = json.loads(Path(path).read_text())
    return load_action(spec)


def _action_name(action: GroupAction) -> str:
    return f"crossed({action.group.order},{action.theta.order})"


def cmd_alpha(args: argparse.Namespace) -> int:
    if args.ratio < 1:
        print("--ratio must be a positive integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        expr = parse_expr(args.expr)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        tangle = realize(expr)
    except TangleError as exc:
        print(f"invalid tangle: {exc}", file=sys.stderr)
        return EXIT_INVALID_TANGLE
    diagnostics = validate(tangle)
    if not diagnostics.ok:
        print(f"invalid tangle: {diagnostics!r}", file=sys.stderr)
        return EXIT_INVALID_TANGLE
    print(f"alpha = {format_scalar(alpha(tangle, args.ratio))}")
    print(f"c = {capping_exponent(tangle)}")
    print(f"loops = {loops_black(tangle)}")
    print(f"external = {tangle.external.label()}")
    internal = " ".join(d.label() for d in tangle.internal)
    print(f"internal = {internal if internal else 'none'}")
    return 0


def cmd_suite(args: argparse.Namespace) -> int:
    limit = _hard_kmax_limit()
    if args.samples < 1:
        print("--samples must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if not 2 <= args.kmax <= limit:
        print(f"--kmax must lie in 2..{limit} (set {KMAX_LIMIT_ENV} to raise)", file=sys.stderr)
        return EXIT_USAGE
    try:
        action = _load_action(args.action)
    except (OSError, ValueError, GroupError) as exc:
        print(f"cannot load action: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        records = run_suite(
            args.name, action, k_max=args.kmax, samples=args.samples, seed=args.seed
        )
    except SuiteError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    summary = summarize(records)
    report = {
        "config": {
            "suite": args.name,
            "action": _action_name(action),
            "action_path": args.action,
            "k_max": args.kmax,
            "samples": args.samples,
            "seed": args.seed,
        },
        "records": records,
        "summary": summary,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(
            f"suite {args.name}: {summary['cases']} cases, "
            f"{summary['failed']} failed -> {args.out}"
        )
    else:
        sys.stdout.write(text)
    return 0 if summary["ok"] else EXIT_FAILURES


def _parse_label(text: str, colour: int, order: int) -> tuple[int, ...]:
    pieces = [p for p in text.split(",") if p != ""]
    try:
        label = tuple(int(p) for p in pieces)
    except ValueError:
        raise ValueError(f"label {text!r} is not a comma-separated integer tuple")
    if len(label) != colour - 1:
        raise ValueError(
            f"label {text!r} has {len(label)} entries; colour {colour} needs {colour - 1}"
        )
    for entry in label:
        if not 0 <= entry < order:
            raise ValueError(f"label entry {entry} outside 0..{order - 1}")
    return label


def _format_combination(
    components: dict[tuple[int, ...], RadicalScalar], symbol: str, name
) -> str:
    parts = []
    for rep in sorted(components):
        coeff = components[rep]
        if coeff.is_zero():
            continue
        names = ",".join(name(g) for g in rep)
        text = format_scalar(coeff)
        parts.append(f"{symbol}({names})" if text == "1" else f"{text}*{symbol}({names})")
    return " + ".join(parts) if parts else "0"


def cmd_multiply(args: argparse.Namespace) -> int:
    try:
        action = _load_action(args.action)
    except (OSError, ValueError, GroupError) as exc:
        print(f"cannot load action: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cp = CrossedProduct(action)
    if not 2 <= args.colour <= 5:
        print("colour must lie in 2..5", file=sys.stderr)
        return EXIT_USAGE
    group = cp.semidirect if args.basis == "S" else cp.group
    try:
        left = _parse_label(args.left, args.colour, len(group))
        right = _parse_label(args.right, args.colour, len(group))
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.basis == "S":
            P = cp.product
            result = P.multiply(
                P.basis_element(args.colour, left), P.basis_element(args.colour, right)
            )
            print(P.render(result))
        elif args.basis == "thetaS":
            product = cp.orbit_multiply(
                cp.orbit_sum(args.colour, left), cp.orbit_sum(args.colour, right)
            )
            comps = cp.invariant_components(product)
            print(_format_combination(comps, "ThetaS", cp.group.name))
        else:
            product = cp.twist_multiply(args.colour, left, right)
            comps = cp.twist_components(product)
            print(_format_combination(comps, "U", cp.group.name))
    except AlgebraError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planarbox",
        description="Exact computations in group planar algebras and their cut-downs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_alpha = sub.add_parser(
        "alpha", help="capping weight of a tangle expression"
    )
    p_alpha.add_argument("expr", help="s-expression, e.g. '(gen E 2 3)'")
    p_alpha.add_argument("--ratio", type=int, default=2, help="index ratio (default 2)")
    p_alpha.set_defaults(func=cmd_alpha)

    p_suite = sub.add_parser("suite", help="run a named verification suite")
    p_suite.add_argument("name", help=f"one of: {', '.join(SUITE_NAMES)}")
    p_suite.add_argument("--action", help="path to an action JSON file")
    p_suite.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    p_suite.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--out", help="write the JSON report here instead of stdout")
    p_suite.set_defaults(func=cmd_suite)

    p_mult = sub.add_parser("multiply", help="product of two basis labels")
    p_mult.add_argument("colour", type=int)
    p_mult.add_argument("left", help="comma-separated label, e.g. '1' or '0,1'")
    p_mult.add_argument("right")
    p_mult.add_argument("--action", help="path to an action JSON file")
    p_mult.add_argument(
        "--basis",
        choices=["S", "thetaS", "U"],
        default="S",
        help="S: ambient labels; thetaS: orbit sums over the acted-on group; "
        "U: twist sums (labels over the acted-on group)",
    )
    p_mult.set_defaults(func=cmd_multiply)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
