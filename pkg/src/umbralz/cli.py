"""Command-line front end: ``umbralz euler | integrate | verify``.

Exit status is 0 on success, 1 when an identity fails, 2 on usage or
parse errors.  Results go to stdout; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .core import Poly, format_rational, parse_rational
from .errors import BudgetExceeded, InvalidPrime, UmbralError
from .euler import EulerTable, perturbed_euler
from .fermionic import BUDGET_ENV, convergence_report, integral_order_r
from .padic import is_prime
from .verify import REGISTRY, SuiteConfig, run_suite, select

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_euler(args, out) -> int:
    if args.nmax < 0:
        raise UsageError("--nmax must be >= 0")
    if args.r < 1:
        raise UsageError("--r must be >= 1")
    table = EulerTable.build(args.nmax, args.r, with_polys=args.polys)
    rows = []
    for n, value in enumerate(table.values):
        row = {"n": n, "value": format_rational(value)}
        if args.polys:
            row["poly"] = table.polys[n].to_json()
        rows.append(row)
    single = [n for n, k in enumerate(table.routes) if k < 2]
    if single:
        print(f"note: n in {single} computed by the series route only (single-route)", file=sys.stderr)

    if args.format == "json":
        for row, routes in zip(rows, table.routes):
            row["routes"] = "two-route" if routes == 2 else "single-route"
        out.write(_dump({"order": args.r, "rows": rows}) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        fields = ["n", "value"] + (["poly"] if args.polys else [])
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            line = [row["n"], row["value"]]
            if args.polys:
                line.append(json.dumps(row["poly"]))
            writer.writerow(line)
        out.write(buf.getvalue())
    else:
        for n, row in enumerate(rows):
            label = f"E_{n}" if args.r == 1 else f"E_{n}^({args.r})"
            line = f"{label} = {row['value']}"
            if args.polys:
                line += f"    {label}(x) = {table.polys[n]}"
            out.write(line + "\n")
    return EXIT_OK


def cmd_integrate(args, out) -> int:
    try:
        pol = Poly.from_json(args.poly)
        x0 = parse_rational(args.x0)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    if args.r < 1:
        raise UsageError("--r must be >= 1")
    value = integral_order_r(pol, args.r, x0)
    if not args.convergence:
        if args.format == "json":
            out.write(_dump({"integrand": pol.to_json(), "r": args.r, "x0": format_rational(x0),
                             "exact": format_rational(value)}) + "\n")
        else:
            out.write(format_rational(value) + "\n")
        return EXIT_OK

    if args.r != 1 or x0 != 0:
        raise UsageError("--convergence applies to the single integral at x0 = 0")
    try:
        report = convergence_report(pol, args.p, args.nmax, args.M, require_direct=args.direct)
    except InvalidPrime as exc:
        raise UsageError(str(exc)) from None
    except BudgetExceeded as exc:
        print(f"error: {exc}. Drop --direct to use the closed form past the budget, "
              f"or set {BUDGET_ENV}.", file=sys.stderr)
        return EXIT_USAGE
    out.write(_dump(report.to_json()) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    filters = [f for chunk in (args.filter or []) for f in chunk.split(",") if f]
    if filters and not select(filters):
        known = ", ".join(i.id for i in REGISTRY)
        raise UsageError(f"no identity matches {filters}; known ids: {known}")
    try:
        primes = tuple(int(p) for p in args.primes.split(","))
    except ValueError:
        raise UsageError(f"--primes must be comma-separated integers, got {args.primes!r}") from None
    for p in primes:
        if p == 2 or not is_prime(p):
            raise UsageError(f"{p} is not an odd prime")
    if args.nmax < 0 or args.rmax < 1:
        raise UsageError("--nmax must be >= 0 and --rmax >= 1")
    cfg = SuiteConfig(nmax=args.nmax, rmax=args.rmax, primes=primes, seed=args.seed)

    if args.perturb_euler is not None:
        with perturbed_euler(args.perturb_euler) as bad:
            print(f"perturbing E_{args.perturb_euler} to {format_rational(bad)}", file=sys.stderr)
            results = run_suite(cfg, filters)
    else:
        results = run_suite(cfg, filters)

    if args.timings:
        for res in results:
            print(f"{res.id}: {res.wall_time:.3f}s", file=sys.stderr)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        out.write(_dump({
            "config": {"nmax": cfg.nmax, "rmax": cfg.rmax, "primes": list(cfg.primes), "seed": cfg.seed},
            "results": [r.to_json(args.timings) for r in results],
            "passed": not failed,
        }) + "\n")
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status}  {r.id:<28} {r.params} ({r.cases} cases)\n")
            if not r.passed:
                out.write(f"      counterexample: {json.dumps(r.counterexample, sort_keys=True)}\n")
        out.write(f"{len(results) - len(failed)}/{len(results)} identities hold\n")
    return EXIT_FAIL if failed else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="umbralz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("euler", help="table of Euler numbers of order r")
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--polys", action="store_true", help="also print E_n^(r)(x) coefficients")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("integrate", help="fermionic p-adic integral of a polynomial")
    p.add_argument("--poly", required=True,
                   help='JSON array of rational strings, constant term first, e.g. \'["0","1"]\'')
    p.add_argument("--r", type=int, default=1, help="number of iterated integrals")
    p.add_argument("--x0", default="0", help="evaluate the r-fold integral of p(x1+...+xr+x0)")
    p.add_argument("--convergence", action="store_true", help="print the partial-sum report")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--nmax", type=int, default=3, help="largest N in the report")
    p.add_argument("--M", type=int, default=20, help="p-adic precision for valuations")
    p.add_argument("--direct", action="store_true",
                   help="require direct summation for every N (fails past the budget)")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("verify", help="check every registered identity")
    p.add_argument("--filter", action="append", help="identity id or id prefix, e.g. eq48")
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--primes", "--pset", default="3,5,7")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.add_argument("--timings", action="store_true", help="report wall times (stderr, and in JSON output)")
    p.add_argument("--perturb-euler", type=int, metavar="N",
                   help="corrupt E_N before running (mutation smoke test)")
    p.add_argument("--list", action="store_true", help="list identity ids and exit")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "list", False):
        for ident in REGISTRY:
            out.write(f"{ident.id:<28} {ident.summary}\n")
        return EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"umbralz {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UmbralError as exc:
        print(f"umbralz {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
