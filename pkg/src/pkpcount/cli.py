"""Command line interface: ``pkpcount <subcommand> [flags]``.

Exit codes: 0 success, 1 internal error, 2 parameter or input error,
3 enumeration cap refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path

from . import oracle
from .errors import CapExceeded, InstanceFormatError, ParameterError, PKPError
from .exactnum import format_rational, render_decimal
from .expectation import (
    check_phi_binomial_bound,
    expectation_report,
    expected,
    heuristic_expectation,
    sum_E_sigma,
    sum_E_sigma_star,
)
from .generators import deserialize, generate, serialize
from .params import ParameterSet, PrimePowerWarning, Variant
from .sampling import SeededRng

CSV_HEADER = [
    "variant", "q", "ell", "m", "n", "exact_num", "exact_den", "exact_decimal",
    "exact_minus_one_decimal", "heuristic_decimal", "ratio_decimal",
]

EXIT_OK, EXIT_INTERNAL, EXIT_PARAM, EXIT_CAP = 0, 1, 2, 3


def _params(args) -> ParameterSet:
    missing = [f"--{k}" for k in ("q", "ell", "m") if getattr(args, k) is None]
    if missing:
        raise ParameterError(f"missing required flag(s): {', '.join(missing)}", missing[0])
    return ParameterSet(args.q, args.ell, args.m, args.n, Variant.parse(args.variant))


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _report_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for d in rows:
        w.writerow([d[k] for k in CSV_HEADER])
    return buf.getvalue()


def run_expect(args) -> int:
    params = _params(args)
    if not args.loose:
        params.validate(warn_prime_power=False)
    report = expectation_report(params, strict=not args.loose, digits=args.digits)
    if args.format == "json":
        _emit(args, json.dumps(report.as_dict(), indent=2) + "\n")
    elif args.format == "csv":
        _emit(args, _report_csv([report.as_dict()]))
    else:
        _emit(args, report.text() + "\n")
    return EXIT_OK


def run_heuristic(args) -> int:
    params = _params(args)
    h = heuristic_expectation(params)
    if args.format == "json":
        doc = {"variant": params.variant.value, "q": params.q, "ell": params.ell, "m": params.m, "n": params.n,
               "heuristic": format_rational(h), "heuristic_decimal": render_decimal(h, args.digits)}
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        _emit(args, f"{format_rational(h)}\n{render_decimal(h, args.digits)}\n")
    return EXIT_OK


def run_gen(args) -> int:
    params = _params(args).validate(require_prime=True)
    inst = generate(params, SeededRng(args.seed))
    _emit(args, serialize(inst, with_secret=args.with_secret))
    return EXIT_OK


def _read_instance(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance file: {exc.strerror}", path) from None
    try:
        return deserialize(text)
    except InstanceFormatError as exc:
        raise InstanceFormatError(str(exc), path) from None


def run_count(args) -> int:
    inst = _read_instance(args.instance)
    res = oracle.count_solutions(inst, cap=args.cap, prune=not args.no_prune)
    if args.format == "json":
        _emit(args, json.dumps(res.as_dict(), indent=2) + "\n")
    else:
        secret = "n/a" if res.contains_secret is None else str(res.contains_secret).lower()
        _emit(args, f"n_sol            {res.n_sol}\nenumerated       {res.enumerated}\ncontains_secret  {secret}\n")
    return EXIT_OK


def run_mc(args) -> int:
    params = _params(args)
    rep = oracle.monte_carlo_expectation(params, args.samples, seed=args.seed, workers=args.workers, cap=args.cap)
    d = rep.as_dict(args.digits)
    if args.format == "json":
        _emit(args, json.dumps(d, indent=2) + "\n")
    else:
        _emit(args, "".join(f"{k:<24}{v}\n" for k, v in d.items()))
    return EXIT_OK if rep.passed is not False else EXIT_INTERNAL


def run_enumerate_exact(args) -> int:
    params = _params(args)
    value = oracle.exhaustive_expectation(params, cap=args.cap)
    try:
        formula = expected(params)
    except ParameterError:
        formula = None
    doc = {
        "parameters": str(params),
        "exhaustive": format_rational(value),
        "exhaustive_decimal": render_decimal(value, args.digits),
        "formula": None if formula is None else format_rational(formula),
        "match": None if formula is None else value == formula,
    }
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        _emit(args, "".join(f"{k:<20}{v}\n" for k, v in doc.items()))
    return EXIT_INTERNAL if doc["match"] is False else EXIT_OK


def parse_int_list(text: str) -> list[int]:
    """``"3"``, ``"3,5,7"`` or ``"30..41"`` (inclusive)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list {text!r}")
    return out


def run_table(args) -> int:
    rows = []
    for variant in args.variant.split(","):
        for q in args.q:
            for ell in args.ell:
                for m in args.m:
                    for n in args.n:
                        p = ParameterSet(q, ell, m, n, Variant.parse(variant))
                        with warnings.catch_warnings():
                            warnings.simplefilter("ignore", PrimePowerWarning)
                            rows.append(expectation_report(p, strict=not args.loose, digits=args.digits).as_dict())
    if args.format == "json":
        _emit(args, json.dumps([{k: d[k] for k in CSV_HEADER} for d in rows], indent=2) + "\n")
    else:
        _emit(args, _report_csv(rows))
    return EXIT_OK


def selftest_checks():
    """(name, callable returning bool) pairs exercised by ``selftest``."""
    P = ParameterSet
    checks = []
    tiny = [P(2, 1, 2, 1, "ipkp"), P(3, 1, 3, 1, "ipkp"), P(3, 2, 3, 1, "ipkp"), P(7, 1, 3, 1, "ipkp_star"),
            P(2, 1, 2, 1, "pkp"), P(3, 1, 3, 1, "pkp"), P(5, 1, 3, 1, "pkp_star"), P(7, 2, 4, 1, "pkp_star")]
    for p in tiny:
        checks.append((f"exhaustive == formula {p}", lambda p=p: oracle.exhaustive_expectation(p) == expected(p)))
    checks.append(("pkp q=2 ell=1 m=2 is 4/3", lambda: expected(P(2, 1, 2, 1, "pkp")) == Fraction(4, 3)))
    checks.append(("eigenvector census m<=4, q in {2,3,5}", lambda: all(
        oracle.brute_sum_E_sigma(m, q) == sum_E_sigma(m, q) for m in range(1, 5) for q in (2, 3, 5))))
    checks.append(("distinct eigenvector census m<=4, q in {3,5}", lambda: all(
        oracle.brute_sum_E_sigma(m, q, star=True) == sum_E_sigma_star(m, q)
        for q in (3, 5) for m in range(1, min(4, q - 1) + 1))))
    checks.append(("cycle identity q in {3,5,7}, m<=5", lambda: all(
        oracle.check_cycle_identity(m, q, d) for q in (3, 5, 7) for d in range(1, q) if (q - 1) % d == 0
        for m in range(1, 6))))
    checks.append(("phi-binomial bound q in {5,7,11,13}", lambda: all(
        check_phi_binomial_bound(m, q) for q in (5, 7, 11, 13) for m in range(1, q - 1))))
    checks.append(("PERK ipkp q=1021 extra solutions ~ 2.89e-6", lambda: render_decimal(
        expected(P(1021, 35, 79, 3, "ipkp")) - 1, 3) == "2.89e-6"))
    checks.append(("PKP-DSS pkp q=251 rounds to 5412", lambda: round(expected(P(251, 41, 69, 1, "pkp"))) == 5412))
    return checks


def run_selftest(args) -> int:
    failures = 0
    for name, fn in selftest_checks():
        t0 = time.perf_counter()
        try:
            ok = bool(fn())
            note = ""
        except PKPError as exc:
            ok, note = False, f" ({exc})"
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}  [{time.perf_counter() - t0:.2f}s]{note}")
    print(f"{'all checks passed' if not failures else f'{failures} check(s) failed'}")
    return EXIT_OK if not failures else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pkpcount", description="Expected solution counts for random PKP/IPKP instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--q", type=int, help="field size")
    shared.add_argument("--ell", type=int, help="rows of A")
    shared.add_argument("--m", type=int, help="permuted dimension")
    shared.add_argument("--n", type=int, default=1, help="columns of B (default 1)")
    shared.add_argument("--variant", default="ipkp", help="ipkp, ipkp_star, pkp or pkp_star")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--digits", type=int, default=12, help="significant digits in decimal output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("expect", parents=[shared, common], help="exact expected number of solutions")
    p.add_argument("--loose", action="store_true", help="evaluate outside the formula's hypotheses")
    p.set_defaults(func=run_expect)

    p = sub.add_parser("heuristic", parents=[shared, common], help="the m!/q^(ell n) estimate")
    p.set_defaults(func=run_heuristic)

    p = sub.add_parser("gen", parents=[shared, common], help="generate a random instance file")
    p.add_argument("--with-secret", action="store_true", help="include the planted permutation")
    p.set_defaults(func=run_gen)

    p = sub.add_parser("count", parents=[common], help="count solutions of an instance file")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=oracle.MAX_PERMUTATION_M, help="largest m to enumerate")
    p.add_argument("--no-prune", action="store_true", help="multiply out every permutation")
    p.set_defaults(func=run_count)

    p = sub.add_parser("mc", parents=[shared, common], help="Monte Carlo estimate against the exact value")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=oracle.MAX_PERMUTATION_M)
    p.set_defaults(func=run_mc)

    p = sub.add_parser("enumerate-exact", parents=[shared, common], help="exact average over the whole instance space")
    p.add_argument("--cap", type=int, default=oracle.MAX_EXHAUSTIVE_POINTS)
    p.set_defaults(func=run_enumerate_exact)

    p = sub.add_parser("table", parents=[common], help="CSV sweep over a parameter grid (text and csv formats both give CSV)")
    p.add_argument("--q", type=parse_int_list, required=True)
    p.add_argument("--ell", type=parse_int_list, required=True)
    p.add_argument("--m", type=parse_int_list, required=True)
    p.add_argument("--n", type=parse_int_list, default=[1])
    p.add_argument("--variant", default="ipkp", help="comma separated variants")
    p.add_argument("--loose", action="store_true")
    p.set_defaults(func=run_table)

    p = sub.add_parser("selftest", help="run the bundled oracle checks")
    p.set_defaults(func=run_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParameterError, InstanceFormatError) as exc:
        constraint = getattr(exc, "constraint", None)
        tag = f" [constraint: {constraint}]" if constraint else ""
        print(f"error: {exc}{tag}", file=sys.stderr)
        return EXIT_PARAM
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
