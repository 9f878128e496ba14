"""Command-line front end.

Exit codes: 0 ok, 1 a claim or check failed, 2 resource limit or algorithm
assertion (Stalled, IterationCap, BudgetExceeded), 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import thickness
from .decomposer import decompose
from .errors import (
    BudgetExceeded,
    CantorSumError,
    CertificateFormatError,
    DecompositionFailure,
    NotTriadic,
    ParseError,
    TargetOutsideInterval,
    UnsupportedDomain,
)
from .exact import is_triadic, parse, render
from .oracle import DEFAULT_BUDGET, check_family_claims, coverage_sweep, rows_to_csv
from .problem import Problem, average_problem, power_sum_problem, problem_by_name, product_problem
from .verify import verify_document

EXIT_OK, EXIT_CLAIM, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


_POWER_RE = re.compile(r"^\((.+)\)(?:\^(\d+))?$")


def parse_value(text: str) -> Fraction:
    """Rational grammar of :func:`cantorsum.exact.parse`, plus ``(p/q)`` and ``(p/q)^n``."""
    text = text.strip()
    m = _POWER_RE.match(text)
    if m:
        return parse(m.group(1)) ** int(m.group(2) or 1)
    return parse(text)


def parse_range(text: str) -> List[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"malformed range {text!r}; expected N or A..B") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def parse_claim(text: str) -> Tuple[Fraction, Fraction]:
    # split on the ".." that separates the endpoints, not on decimal points
    parts = re.split(r"\.\.(?=[-(\d])", text.strip())
    if len(parts) != 2:
        raise UsageError(f"malformed claim {text!r}; expected LO..HI")
    lo, hi = parse_value(parts[0]), parse_value(parts[1])
    if lo > hi:
        raise UsageError(f"claim {text!r} is empty")
    return lo, hi


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _residual_exponent(residual: Fraction) -> Optional[int]:
    # largest e with |residual| < 3^-e
    if residual == 0:
        return None
    r = abs(residual)
    e = 0
    while r * 3 ** (e + 1) < 1:
        e += 1
    return e


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"{path}: not a JSON document ({exc})") from None
    if not isinstance(doc, dict):
        raise CertificateFormatError(f"{path}: expected a JSON object")
    return doc


def _build_problem(args) -> Problem:
    N = args.precision
    if args.kind == "average":
        return average_problem(N)
    if args.kind == "product":
        return product_problem(2, N)
    if args.kind == "powersum":
        if args.m is None or args.m < 1:
            raise UsageError("powersum needs --m >= 1")
        return power_sum_problem(args.m, args.t, N)
    if args.kind == "custom":
        if not args.config:
            raise UsageError("custom needs --config FILE")
        doc = _load_json(args.config)
        doc.setdefault("kind", "custom")
        doc["precision"] = doc.get("precision", N) if args.precision_default else N
        return Problem.from_dict(doc)
    raise UsageError(f"unknown kind {args.kind!r}")


def cmd_decompose(args) -> int:
    problem = _build_problem(args)
    if args.target is not None:
        target = parse_value(args.target)
    elif problem.target is not None:
        target = problem.target
    else:
        raise UsageError("--target is required")
    if not is_triadic(target):
        N = problem.precision
        hint = Fraction(target.numerator * 3 ** N // target.denominator, 3 ** N)
        raise NotTriadic(f"target {render(target)} is not triadic; nearest depth-{N} "
                         f"truncation is {render(hint)} = {hint.numerator}/3^{N}")
    problem = problem.with_target(target)
    try:
        cert = decompose(problem)
    except DecompositionFailure as exc:
        _err(f"error: {type(exc).__name__}: {exc}")
        if exc.partial is not None:
            _write(exc.partial.to_json(), args.output)
        return EXIT_RESOURCE
    _write(cert.to_json(), args.output)
    e = _residual_exponent(cert.residual)
    bound = "residual = 0" if e is None else f"|residual| < 3^-{e}"
    _err(f"target={render(target)} t={problem.t} flips={cert.iterations} {bound}")
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _load_json(args.certificate)
    report = verify_document(doc)
    print(report)
    return EXIT_OK if report.ok else EXIT_CLAIM


def cmd_oracle(args) -> int:
    budget = args.budget if args.budget is not None else DEFAULT_BUDGET
    if args.family:
        ks = parse_range(args.k) if args.k else [2, 3]
        rows = check_family_claims(ks, args.max_stage, budget)
        lines = ["k,stage,claim_lo,claim_hi,covered,status,note"]
        for r in rows:
            lines.append(f"{r.k},{'' if r.stage is None else r.stage},{render(r.claim_lo)},"
                         f"{render(r.claim_hi)},{str(r.covered).lower()},{r.status},\"{r.note}\"")
            if not r.covered:
                _err(f"WARNING: family claim k={r.k} NOT CONFIRMED: {r.note}")
        _write("\n".join(lines) + "\n", args.output)
        return EXIT_OK if all(r.covered for r in rows) else EXIT_CLAIM

    if args.config:
        problem = Problem.from_dict(_load_json(args.config))
    elif args.problem:
        try:
            problem = problem_by_name(args.problem)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("oracle needs --problem, --config or --family")
    ks = parse_range(args.k or "1..6")
    claim = parse_claim(args.claim) if args.claim else None
    try:
        rows = coverage_sweep(problem, ks, claim, budget, jobs=args.jobs)
    except BudgetExceeded as exc:
        _err(f"error: {exc}")
        return EXIT_RESOURCE
    if len(rows) < len(ks):
        _err(f"note: budget exceeded at stage {ks[len(rows)]}; reporting stages up to {rows[-1].k}")
    _write(rows_to_csv(rows), args.output)
    return EXIT_OK if rows[-1].covered else EXIT_CLAIM


def cmd_thickness(args) -> int:
    ms = parse_range(args.m)
    if ms[0] < 1:
        raise UsageError("m must be >= 1")
    _write(thickness.format_table(ms, args.format), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantorsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a target and write a certificate")
    p.add_argument("kind", choices=["average", "product", "powersum", "custom"])
    p.add_argument("--target")
    p.add_argument("--precision", type=int, default=None, help="stop when |residual| < 3^-N (default 40)")
    p.add_argument("--m", type=int)
    p.add_argument("--t", type=int, help="powersum variable count (default t_m)")
    p.add_argument("--config", help="JSON problem document for the custom kind")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="replay and check a certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="stage-image coverage sweep (CSV)")
    p.add_argument("--problem")
    p.add_argument("--config")
    p.add_argument("--family", action="store_true")
    p.add_argument("--k", help="stage range, e.g. 1..8")
    p.add_argument("--claim", help="LO..HI in objective units, e.g. (8/9)^3..8/9")
    p.add_argument("--budget", type=int)
    p.add_argument("--max-stage", type=int, dest="max_stage")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("thickness", help="thickness / term-count comparison table")
    p.add_argument("--m", default="1..6")
    p.add_argument("--format", choices=["csv", "md"], default="csv")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_thickness)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "command", None) == "decompose":
        args.precision_default = args.precision is None
        if args.precision is None:
            args.precision = 40
    try:
        return args.func(args)
    except TargetOutsideInterval as exc:
        _err(f"error: {exc}")
        return EXIT_CLAIM
    except (UsageError, ParseError, NotTriadic, CertificateFormatError, UnsupportedDomain, ValueError) as exc:
        _err(f"error: {type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except CantorSumError as exc:
        _err(f"error: {type(exc).__name__}: {exc}")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
