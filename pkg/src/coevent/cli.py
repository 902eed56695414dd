"""Command line entry point: ``coevent inspect|match|bayes|iterate <file>``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bayes import mu_vector
from .core import labelling_of, match_coevent
from .errors import SchemaError, UndefinedConditional, UndefinedPosterior, ValidationError
from .measures import CertaintySpace, certainty_of
from .recurrence import DEFAULT_EPS, DEFAULT_MAX_ITER
from .report import (
    DEFAULT_PRECISION,
    DEFAULT_TRACE_LIMIT,
    VARIANTS,
    _labels_text,
    render_diagram,
    run_pipeline,
    to_decimal,
    undefined_document,
    write_report,
)
from .scenario import Scenario, load

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNDEFINED = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _rational_arg(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _labelling_lines(title: str, s, order, precision: int) -> list[str]:
    lines = [f"{title}:"]
    for c in labelling_of(s):
        lines.append(
            f"  {_labels_text(c.key, order):<12} atoms={len(c.atoms):<5} p={to_decimal(c.probability, precision)} ({c.probability})"
        )
    return lines


def cmd_inspect(s: Scenario, args) -> int:
    p = args.precision
    lines = [
        f"name: {s.name or '-'}",
        f"atoms: {len(s.space)}{' (uniform)' if s.space.is_uniform else ''}",
        "labels: " + ", ".join(s.labels),
        "believabilities: " + "  ".join(
            f"{x}={to_decimal(s.believabilities[x], p)}" for x in s.labels
        ),
    ]
    cs = CertaintySpace(s.space, s.believabilities)
    for title, ev in (("hypotheses", s.hypotheses), ("reality", s.reality)):
        lines += _labelling_lines(title, ev, s.labels, p)
        phi = certainty_of(ev, cs)
        lines.append(f"  Phi = {to_decimal(phi, p)} ({phi})")
    print("\n".join(lines))
    return EXIT_OK


def cmd_match(s: Scenario, args) -> int:
    p = args.precision
    m = match_coevent(s.hypotheses, s.reality)
    mu = mu_vector(s.hypotheses, s.reality)
    phi = certainty_of(m, CertaintySpace(s.space, s.believabilities))
    lines = ["mu: " + "  ".join(f"{x}={to_decimal(mu[x], p)} ({mu[x]})" for x in s.labels)]
    lines += _labelling_lines("match", m, s.labels, p)
    lines.append(f"  Phi = {to_decimal(phi, p)} ({phi})")
    print("\n".join(lines))
    if args.render:
        print()
        sys.stdout.write(render_diagram(s, args.render, ascii=args.ascii))
    return EXIT_OK


def _undefined(s: Scenario, exc: Exception, args) -> int:
    doc = undefined_document(s, exc, args.precision)
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        print(f"UndefinedPosterior: {doc['message']}")
        print(f"Phi(M) = {doc['phi_prior']['decimal']} ({doc['phi_prior']['exact']})")
    return EXIT_UNDEFINED


def cmd_bayes(s: Scenario, args) -> int:
    try:
        r = run_pipeline(s, variant=args.variant)
    except (UndefinedPosterior, UndefinedConditional) as exc:
        return _undefined(s, exc, args)
    sys.stdout.write(write_report(r, args.format, args.precision))
    return EXIT_OK


def cmd_iterate(s: Scenario, args) -> int:
    try:
        r = run_pipeline(s, iterate=True, eps=args.eps, max_iter=args.max_iter, trace=args.trace)
    except (UndefinedPosterior, UndefinedConditional) as exc:
        return _undefined(s, exc, args)
    sys.stdout.write(write_report(r, args.format, args.precision, args.trace_limit))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coevent", description="Co~event Bayes updates on scenario files.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="scenario file (JSON)")
    common.add_argument("--precision", type=_positive_int, default=DEFAULT_PRECISION,
                        help="decimal places in rendered values (default 3)")

    report = argparse.ArgumentParser(add_help=False)
    report.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("inspect", parents=[common], help="summarise a scenario")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("match", parents=[common], help="match co~event and match probabilities")
    p.add_argument("--render", choices=("H", "R", "M"), help="print an incidence diagram")
    p.add_argument("--ascii", action="store_true", help="ASCII markers only")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("bayes", parents=[common, report], help="one Bayes update")
    p.add_argument("--variant", choices=VARIANTS, default="bra")
    p.set_defaults(func=cmd_bayes)

    p = sub.add_parser("iterate", parents=[common, report], help="recurrent Bayes updates")
    p.add_argument("--eps", type=_rational_arg, default=DEFAULT_EPS,
                   help="convergence threshold as a rational or decimal, e.g. 1e-9 (default 1e-12)")
    p.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER)
    p.add_argument("--trace", action="store_true", help="record every step")
    p.add_argument("--trace-limit", type=_positive_int, default=DEFAULT_TRACE_LIMIT,
                   help="maximum steps written to the report (default 100)")
    p.set_defaults(func=cmd_iterate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        s = load(args.file)
        return args.func(s, args)
    except (SchemaError, ValidationError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
