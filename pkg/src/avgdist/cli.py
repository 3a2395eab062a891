"""Command-line front end: bound tables, LP runs, certificates, search and lemma sweeps.

Exit status is 0 on success, 1 on a usage error and 2 when a verification
fails (an invalid certificate, a lemma counterexample, a violated Delsarte
inequality, inconsistent bounds or an exhausted search budget).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import BoundsError, InconsistentBounds, best_upper, lower_sweep
from .certificates import ApplicabilityError, Family, build_family, certificate_bound, verify_certificate
from .codes import CodeParseError, average_distance, distance_distribution, format_code, parse_code
from .krawtchouk import rational_strings
from .lemma_suite import LEMMAS
from .lp import VARIANTS
from .result import fmt_decimal, fmt_fraction
from .search import (
    BudgetExceeded,
    SearchConfig,
    SearchError,
    brute_force_beta,
    construct_constant_weight,
    construct_two_n,
)

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class OutputRecord:
    n: int
    M: int
    lower_exact: str
    lower_decimal: str
    upper_exact: str | None = None
    provenance: list[str] = field(default_factory=list)

    @classmethod
    def from_bounds(cls, lo, hi) -> "OutputRecord":
        return cls(
            lo.n,
            lo.M,
            fmt_fraction(lo.value),
            fmt_decimal(lo.value),
            fmt_fraction(hi.value) if hi is not None else None,
            list(lo.provenance),
        )


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _approx(v: Fraction) -> str:
    return f"{fmt_fraction(v)} (approx {fmt_decimal(v)})"


def _records(n: int, m_from: int, m_to: int) -> list[OutputRecord]:
    out = []
    for lo in lower_sweep(n, m_from, m_to):
        hi = best_upper(n, lo.M)
        if hi is not None and lo.value > hi.value:
            raise InconsistentBounds(f"({n}, {lo.M}): lower {lo.value} > upper {hi.value}")
        out.append(OutputRecord.from_bounds(lo, hi))
    return out


# subcommands ---------------------------------------------------------------


def cmd_bounds(args) -> int:
    rec = _records(args.n, args.m, args.m)[0]
    if args.json:
        _emit(asdict(rec))
        return EXIT_OK
    print(f"n = {rec.n}, M = {rec.M}")
    print(f"lower: {rec.lower_exact} (approx {rec.lower_decimal})")
    print(f"upper: {rec.upper_exact if rec.upper_exact else 'none known'}")
    print(f"provenance: {', '.join(rec.provenance)}")
    return EXIT_OK


_COLUMNS = ["n", "M", "lower_exact", "lower_decimal", "upper_exact", "provenance"]
_HEADERS = ["n", "M", "lower (exact)", "lower (approx)", "upper (exact)", "provenance"]


def _row(rec: OutputRecord) -> list[str]:
    return [str(rec.n), str(rec.M), rec.lower_exact, rec.lower_decimal, rec.upper_exact or "", ";".join(rec.provenance)]


def cmd_table(args) -> int:
    m_to = args.m_to if args.m_to is not None else 2**args.n
    recs = _records(args.n, args.m_from, m_to)
    if args.format == "json":
        _emit([asdict(r) for r in recs])
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_COLUMNS)
        w.writerows(_row(r) for r in recs)
        sys.stdout.write(buf.getvalue())
    elif args.format == "md":
        print("| " + " | ".join(_HEADERS) + " |")
        print("|" + "---|" * len(_HEADERS))
        for r in recs:
            print("| " + " | ".join(c.replace(";", ", ") for c in _row(r)) + " |")
    else:
        rows = [_HEADERS] + [_row(r) for r in recs]
        widths = [max(len(row[i]) for row in rows) for i in range(len(_HEADERS) - 1)]
        for row in rows:
            print("  ".join(c.ljust(w) for c, w in zip(row, widths)) + "  " + row[-1])
    return EXIT_OK


def cmd_lp(args) -> int:
    run = VARIANTS[args.variant](args.n, args.m)
    prog, sol = run.program, run.solution
    names = prog.names or tuple(f"x{i}" for i in range(prog.num_vars))
    data = {
        "n": args.n,
        "M": args.m,
        "variant": args.variant,
        "ell": run.ell,
        "bound": run.bound.to_dict(),
        "objective": fmt_fraction(sol.value),
        "point": dict(zip(names, rational_strings(sol.point))),
        "dual": rational_strings(sol.certificate),
    }
    B = run.dual_distribution()
    if B is not None:
        data["B"] = rational_strings(B)
    if args.json:
        _emit(data)
        return EXIT_OK
    print(f"variant {args.variant}" + (f" (worst ell = {run.ell})" if run.ell is not None else ""))
    print(f"lower bound on beta({args.n}, {args.m}): {_approx(run.bound.value)}")
    print(f"LP optimum: {data['objective']}")
    print("optimal point: " + ", ".join(f"{k}={v}" for k, v in data["point"].items()))
    if B is not None:
        print("B_1..B_n: " + ", ".join(data["B"]))
    print("dual multipliers: " + ", ".join(data["dual"]))
    return EXIT_OK


def cmd_certify(args) -> int:
    cert = build_family(args.family, args.n)
    report = verify_certificate(cert)
    data = report.to_dict()
    data["coefficients"] = cert.poly.to_json()
    if args.m is not None and report.valid:
        b = certificate_bound(cert, args.m)
        data["M"] = args.m
        data["bound"] = fmt_fraction(b)
        data["bound_decimal"] = fmt_decimal(b)
    if args.json:
        _emit(data)
    else:
        print(f"{report.family} ({report.side.value} side), n = {report.n}: {'valid' if report.valid else 'INVALID'}")
        for v in report.violations:
            print(f"  violation: {v}")
        if "bound" in data:
            print(f"bound for M = {args.m}: {data['bound']} (approx {data['bound_decimal']})")
    return EXIT_OK if report.valid else EXIT_FAILED


def _print_search(res, header: str) -> None:
    print(f"{header} beta({res.n}, {res.M}) = {fmt_fraction(res.value)} (approx {fmt_decimal(res.value)})")
    print(f"nodes: {res.nodes}")
    for i, code in enumerate(res.codes, start=1):
        print(f"# code {i}")
        sys.stdout.write(format_code(code))


def cmd_search(args) -> int:
    cfg = SearchConfig(
        args.n,
        args.m,
        node_budget=args.budget,
        all_minimizers=args.all_minimizers,
        threads=args.threads,
        allow_large=args.allow_large,
    )
    try:
        res = brute_force_beta(cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.best is not None:
            _print_search(exc.best, "incomplete, upper estimate")
        return EXIT_FAILED
    _print_search(res, "exact")
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.kind == "two_n":
        code = construct_two_n(args.n)
        label = f"two_n n={args.n}"
    else:
        if args.w is None:
            raise UsageError("construct --kind constant_weight needs --w")
        code = construct_constant_weight(args.n, args.w)
        label = f"constant_weight n={args.n} w={args.w}"
    d = average_distance(code)
    sys.stdout.write(format_code(code, [f"{label} M={code.M}", f"average distance {fmt_fraction(d)}"]))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(LEMMAS) if args.lemma == "all" else [args.lemma]
    reports = []
    for name in names:
        fn = LEMMAS[name]
        if name in ("midpoint", "mod4"):
            reports.append(fn(args.n_max))
        else:
            reports.append(fn(args.n_max, threads=args.threads))
    if args.json:
        _emit([r.to_dict() for r in reports])
    else:
        for r in reports:
            print(r.summary())
            for c in r.counterexamples[:20]:
                print(f"  counterexample: {c}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def cmd_eval_code(args) -> int:
    text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text(encoding="utf-8")
    code = parse_code(text)
    dist = distance_distribution(code)
    d = average_distance(code)
    bad = dist.delsarte_violations()
    data = {
        "n": code.n,
        "M": code.M,
        "average_distance": fmt_fraction(d),
        "average_distance_decimal": fmt_decimal(d),
        "A": rational_strings(dist.A),
        "B": rational_strings(dist.B),
        "delsarte_violations": bad,
    }
    if args.json:
        _emit(data)
    else:
        print(f"n = {code.n}, M = {code.M}")
        print(f"average distance: {data['average_distance']} (approx {data['average_distance_decimal']})")
        print("A: " + " ".join(data["A"]))
        print("B: " + " ".join(data["B"]))
        print("Delsarte check: " + ("ok" if not bad else f"VIOLATED at k = {bad}"))
    return EXIT_FAILED if bad else EXIT_OK


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="avgdist", description="Exact bounds on the minimum average Hamming distance of binary codes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("bounds", help="best lower and upper bound for one (n, M)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("table", help="bounds for a range of M")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m-from", type=int, default=1)
    s.add_argument("--m-to", type=int, default=None, help="default 2^n")
    fmt = s.add_mutually_exclusive_group()
    for name in ("csv", "json", "md"):
        fmt.add_argument(f"--{name}", dest="format", action="store_const", const=name)
    s.set_defaults(func=cmd_table, format="text")

    s = sub.add_parser("lp", help="solve one LP program exactly")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--variant", choices=sorted(VARIANTS), default="bside")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_lp)

    s = sub.add_parser("certify", help="build and verify a certificate polynomial")
    s.add_argument("--family", choices=[f.value for f in Family], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("search", help="exhaustive search for beta(n, M)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--all-minimizers", action="store_true")
    s.add_argument("--budget", type=int, default=None, help="node budget")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--allow-large", action="store_true", help="permit n above the advisory limit")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("construct", help="emit an explicit code")
    s.add_argument("--kind", choices=["two_n", "constant_weight"], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--w", type=int, default=None)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="exhaustive lemma sweeps")
    s.add_argument("--lemma", choices=["all", *LEMMAS], default="all")
    s.add_argument("--n-max", type=int, default=None)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("eval-code", help="average distance and distributions of a code file")
    s.add_argument("path", help="code file, or - for stdin")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_eval_code)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except (BoundsError, ApplicabilityError, SearchError, CodeParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentBounds as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
