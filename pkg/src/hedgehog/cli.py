"""Command-line front end.

Subcommands wire the library into reproduction workflows:

  extremal   table of extremal constants vs their asymptotics
  measure    hedgehog measure and spine table for an integer polynomial
  hankel     exact Hankel-determinant growth experiment for a polynomial
  optimize   multistart search over circle configurations
  verify     run the built-in verification suite

Every command supports --format {text,csv,json} and --out; batch runs with
--out also write a .manifest.json recording the exact parameters.  Exit
codes: 0 success, 2 usage error, 3 computation error, 4 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .chebyshev import asymptotic_extremal_constant, extremal_constant
from .exact import (
    PolynomialParseError,
    format_polynomial,
    hankel_determinants,
    hedgehog_series,
    parse_polynomial,
)
from .geometry import dubinin_bound, hedgehog_from_polynomial, hedgehog_measure
from .optimize import multistart_minimize

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTE = 3
EXIT_VERIFY = 4


class UsageError(ValueError):
    pass


def _parse_n_range(text: str) -> list[int]:
    """Accept '5', '1..8', or '1,2,6'."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        if "," in text:
            return [int(part) for part in text.split(",")]
        return [int(text)]
    except ValueError as exc:
        raise UsageError(f"bad --n value {text!r}; use N, A..B, or a,b,c") from exc


def _fmt(value: float, digits: int) -> str:
    return f"{value:.{digits}g}"


def _emit(args, text: str, seed: int | None = None) -> None:
    if args.out:
        path = Path(args.out)
        path.write_text(text)
        parameters = {
            k: v for k, v in vars(args).items() if k not in ("func", "command")
        }
        manifest = {
            "command": args.command,
            "parameters": parameters,
            "tool_version": __version__,
            "seed": seed,
            "outputs": [str(path)],
        }
        Path(str(path) + ".manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n"
        )
    else:
        sys.stdout.write(text)


def cmd_extremal(args) -> int:
    ns = _parse_n_range(args.n)
    if any(n < 1 for n in ns):
        raise UsageError("--n values must be positive")
    if args.terms < 0:
        raise UsageError("--terms must be nonnegative")
    if args.t < 1.0:
        raise UsageError("--t must be >= 1")
    reference_kind = "asymptotic" if args.t == 1.0 else "limit"
    limit = args.t + math.sqrt(args.t * args.t - 1.0)
    rows = []
    for n in ns:
        constant = extremal_constant(n, args.t)
        if args.t == 1.0:
            reference = asymptotic_extremal_constant(n, args.terms).value
        else:
            reference = limit
        rows.append(
            {
                "n": n,
                "constant": constant.value,
                "reference": reference,
                "difference": constant.value - reference,
                "constant_pow_sqrt_n": constant.pow_sqrt_n(),
            }
        )

    d = args.digits
    if args.format == "json":
        payload = {
            "command": "extremal",
            "t": args.t,
            "terms": args.terms,
            "reference_kind": reference_kind,
            "rows": rows,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = [f"n,constant,{reference_kind},difference,constant_pow_sqrt_n"]
        for r in rows:
            lines.append(
                f"{r['n']},{_fmt(r['constant'], d)},{_fmt(r['reference'], d)},"
                f"{_fmt(r['difference'], d)},{_fmt(r['constant_pow_sqrt_n'], d)}"
            )
        text = "\n".join(lines) + "\n"
    else:
        width = d + 7
        header = (
            f"{'n':>6} {'constant':>{width}} {reference_kind:>{width}} "
            f"{'difference':>{width}} {'pow_sqrt_n':>{width}}"
        )
        lines = [header]
        for r in rows:
            lines.append(
                f"{r['n']:>6} {_fmt(r['constant'], d):>{width}} "
                f"{_fmt(r['reference'], d):>{width}} "
                f"{_fmt(r['difference'], d):>{width}} "
                f"{_fmt(r['constant_pow_sqrt_n'], d):>{width}}"
            )
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_measure(args) -> int:
    poly = parse_polynomial(args.poly)
    hog = hedgehog_from_polynomial(poly)
    measure = hedgehog_measure(hog)
    bound = dubinin_bound(hog)
    spines = sorted(hog.spines, key=lambda s: -s.modulus)
    d = args.digits
    if args.format == "json":
        payload = {
            "command": "measure",
            "polynomial": format_polynomial(poly),
            "spine_count": len(spines),
            "measure": measure,
            "capacity_bound": bound,
            "spines": [
                {"modulus": s.modulus, "argument": s.argument} for s in spines
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = [
            f"# polynomial: {format_polynomial(poly)}",
            f"# measure: {_fmt(measure, d)}",
            f"# capacity_bound: {_fmt(bound, d)}",
            "modulus,argument",
        ]
        for s in spines:
            lines.append(f"{_fmt(s.modulus, d)},{_fmt(s.argument, d)}")
        text = "\n".join(lines) + "\n"
    else:
        width = d + 7
        lines = [
            f"polynomial:     {format_polynomial(poly)}",
            f"spines:         {len(spines)}",
            f"measure:        {_fmt(measure, d)}",
            f"capacity bound: {_fmt(bound, d)}",
            f"{'modulus':>{width}} {'argument':>{width}}",
        ]
        for s in spines:
            lines.append(f"{_fmt(s.modulus, d):>{width}} {_fmt(s.argument, d):>{width}}")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_hankel(args) -> int:
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    poly = parse_polynomial(args.poly)
    series = hedgehog_series(poly, max(0, 2 * args.kmax - 2))
    report = hankel_determinants(series, args.kmax)
    max_root = report.max_root()
    d = args.digits
    if args.format == "json":
        payload = {
            "command": "hankel",
            "polynomial": format_polynomial(poly),
            "kmax": args.kmax,
            "max_root_k": max_root,
            "rows": [
                {
                    "k": r.k,
                    "determinant": str(r.determinant),
                    "root_k": r.root_k,
                    "root_k2": r.root_k2,
                }
                for r in report.entries
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = report.to_csv()
    else:
        lines = [
            f"polynomial: {format_polynomial(poly)}",
            f"kmax:       {args.kmax}",
            f"max |A_k|^(1/k): {_fmt(max_root, d)}",
            f"{'k':>4} {'A_k':>44} {'abs_root_k':>14} {'abs_root_k2':>14}",
        ]
        for r in report.entries:
            det = str(r.determinant)
            if len(det) > 44:
                det = det[:20] + "..." + det[-20:]
            lines.append(
                f"{r.k:>4} {det:>44} {_fmt(r.root_k, d):>14} {_fmt(r.root_k2, d):>14}"
            )
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_optimize(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.starts < 1:
        raise UsageError("--starts must be positive")
    result = multistart_minimize(args.n, args.starts, args.seed)
    constant = extremal_constant(args.n).value
    gap = result.best_objective - constant
    d = args.digits
    points = list(zip(result.best_config.angles, result.best_config.weights))
    if args.format == "json":
        payload = {
            "command": "optimize",
            "n": args.n,
            "starts": args.starts,
            "seed": args.seed,
            "best_objective": result.best_objective,
            "extremal_constant": constant,
            "gap": gap,
            "converged_fraction": result.converged_fraction,
            "iterations_total": result.iterations_total,
            "points": [{"angle": a, "weight": w} for a, w in points],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = [
            f"# n: {args.n}",
            f"# starts: {args.starts}",
            f"# seed: {args.seed}",
            f"# best_objective: {_fmt(result.best_objective, d)}",
            f"# extremal_constant: {_fmt(constant, d)}",
            f"# gap: {_fmt(gap, d)}",
            "angle,weight",
        ]
        for a, w in points:
            lines.append(f"{_fmt(a, d)},{_fmt(w, d)}")
        text = "\n".join(lines) + "\n"
    else:
        lines = [
            f"n:                 {args.n}",
            f"starts:            {args.starts}",
            f"seed:              {args.seed}",
            f"best objective:    {_fmt(result.best_objective, d)}",
            f"extremal constant: {_fmt(constant, d)}",
            f"gap:               {_fmt(gap, d)}",
            f"converged:         {result.converged_fraction:.0%}",
            f"evaluations:       {result.iterations_total}",
            f"{'angle':>17} {'weight':>17}",
        ]
        for a, w in points:
            lines.append(f"{_fmt(a, d):>17} {_fmt(w, d):>17}")
        text = "\n".join(lines) + "\n"
    _emit(args, text, seed=args.seed)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify  # deferred: pulls in mpmath and the optimizer

    names = None
    if args.only:
        known = verify.check_names()
        for name in args.only:
            if name not in known:
                raise UsageError(
                    f"unknown check {name!r}; known: {', '.join(known)}"
                )
        names = args.only
    results = verify.run_checks(names, quick=args.quick)
    all_passed = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "command": "verify",
            "quick": args.quick,
            "passed": all_passed,
            "checks": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "details": r.details,
                    "seconds": round(r.seconds, 3),
                }
                for r in results
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = ["name,passed,seconds,details"]
        for r in results:
            detail = r.details.replace('"', "'")
            lines.append(f'{r.name},{r.passed},{r.seconds:.3f},"{detail}"')
        text = "\n".join(lines) + "\n"
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status} {r.name:<26} {r.details}")
        lines.append(
            f"{sum(r.passed for r in results)}/{len(results)} checks passed"
        )
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    if not all_passed:
        return EXIT_VERIFY
    return EXIT_OK


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("text", "csv", "json"), default="text",
                     help="output format (default text)")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="write output to PATH (plus PATH.manifest.json)")
    sub.add_argument("--digits", type=int, default=10,
                     help="significant digits in text/csv output (default 10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hedgehog",
        description="Extremal circle configurations, hedgehog measures, and "
                    "Hankel-determinant capacity experiments.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("extremal", help="extremal constants and asymptotics")
    p.add_argument("--n", default="1..8",
                   help="degree or range: N, A..B, or a,b,c (default 1..8)")
    p.add_argument("--terms", type=int, default=4,
                   help="asymptotic expansion terms (default 4)")
    p.add_argument("--t", type=float, default=1.0,
                   help="scale parameter >= 1 (default 1)")
    _add_common(p)
    p.set_defaults(func=cmd_extremal)

    p = subs.add_parser("measure", help="hedgehog measure of a polynomial")
    p.add_argument("--poly", required=True,
                   help="expression like 'x^3-x-1' or ascending coefficients "
                        "(use --poly=-1,-1,0,1 when the list starts with '-')")
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    p = subs.add_parser("hankel", help="Hankel determinant growth experiment")
    p.add_argument("--poly", required=True,
                   help="monic integer polynomial with |constant term| = 1")
    p.add_argument("--kmax", type=int, default=60,
                   help="largest determinant order (default 60)")
    _add_common(p)
    p.set_defaults(func=cmd_hankel)

    p = subs.add_parser("optimize", help="multistart configuration search")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--starts", type=int, default=100,
                   help="random starts (default 100)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    _add_common(p)
    p.set_defaults(func=cmd_optimize)

    p = subs.add_parser("verify", help="run the verification suite")
    p.add_argument("--quick", action="store_true",
                   help="shorten the Hankel experiment (kmax 60)")
    p.add_argument("--only", action="append", metavar="NAME",
                   help="run only the named check (repeatable)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, PolynomialParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
