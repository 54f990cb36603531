"""qrlab command line.

Exit codes: 0 success, 1 verification failure, 2 usage or validation
error, 3 budget exceeded (or a skipped step under ``suite --strict``).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .bench import bench_charsum, bench_symbol, default_sizes, format_table
from .charsum import (
    DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_MAX_ORDER,
    EXACT,
    Modular,
    charsum_brute,
    charsum_brute_vector,
    charsum_closed,
    charsum_vector,
    orbit_decompose,
)
from .errors import BudgetExceeded, QRLabError, ValidationError
from .legendre import legendre
from .modular import Residue, make_odd_prime
from .proofcheck import Budgets, Fault, run_suite, verify_pair
from .report import dumps, json_int, report_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(text + "\n")


def cmd_symbol(args) -> int:
    p = make_odd_prime(args.p)
    if args.method != "all":
        _out(str(legendre(args.a, p, args.method)))
        return EXIT_OK
    results = {m: legendre(args.a, p, m) for m in ("euler", "brute", "reciprocity")}
    for m, v in results.items():
        _out(f"{m}: {v}")
    if len(set(results.values())) != 1:
        _err("error: evaluators disagree")
        return EXIT_FAIL
    return EXIT_OK


def cmd_charsum(args) -> int:
    p = make_odd_prime(args.p)
    n = args.n
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    budget, max_order = args.enumeration_budget, args.max_order
    m = args.mod

    def finish(x: int) -> int:
        return x % m if m is not None else x

    if args.t is not None:
        t = Residue.of(args.t, p)
        if args.method == "conv":
            mode = Modular(m) if m is not None else EXACT
            value = charsum_vector(p, n, mode, max_order)[t]
        elif args.method == "brute":
            value = finish(charsum_brute(p, n, t, budget))
        else:
            value = finish(charsum_closed(p, n, t))
        _out(str(value))
        return EXIT_OK

    if args.method == "conv":
        mode = Modular(m) if m is not None else EXACT
        values = list(charsum_vector(p, n, mode, max_order))
    elif args.method == "brute":
        values = [finish(x) for x in charsum_brute_vector(p, n, budget)]
    else:
        values = [finish(charsum_closed(p, n, t)) for t in range(p.value)]
    _out("[" + ", ".join(str(v) for v in values) + "]")
    return EXIT_OK


def cmd_orbit(args) -> int:
    p, q = make_odd_prime(args.p), make_odd_prime(args.q)
    st = orbit_decompose(p, q, Residue.of(args.t, p), args.enumeration_budget)
    d = {
        "p": p.value,
        "q": q.value,
        "t": st.target.value,
        "n_fixed": st.n_fixed,
        "n_free": st.n_free,
        "orbit_sizes": {str(k): v for k, v in sorted(st.orbit_sizes.items())},
        "fixed_tuple_entry": st.fixed_tuple_entry,
        "fixed_contribution": json_int(st.fixed_contribution),
        "total": json_int(st.total),
        "total_mod_q": st.total % q.value,
        "fixed_mod_q": st.fixed_contribution % q.value,
    }
    if args.json:
        _out(dumps(d))
    else:
        for k, v in d.items():
            _out(f"{k}: {v}")
    return EXIT_OK if d["total_mod_q"] == d["fixed_mod_q"] else EXIT_FAIL


def _print_steps(report, only_failures: bool) -> None:
    for s in report.steps:
        if only_failures and s.status == "passed":
            continue
        params = " ".join(f"{k}={v}" for k, v in s.params.items())
        mod = f" (mod {s.modulus})" if s.modulus is not None else ""
        detail = s.skipped if s.skipped is not None else f"lhs={s.lhs} rhs={s.rhs}{mod}"
        _out(f"{s.status.upper():7} {s.step_id.value:16} {params} {detail}")
    sm = report.summary
    _out(f"passed={sm['passed']} failed={sm['failed']} skipped={sm['skipped']}")


def cmd_verify(args) -> int:
    p, q = make_odd_prime(args.p), make_odd_prime(args.q)
    report = verify_pair(p, q)
    if args.json:
        _out(report_to_json(report))
    else:
        _print_steps(report, only_failures=False)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_suite(args) -> int:
    budgets = Budgets(args.enumeration_budget, args.max_order)
    faults = [Fault.parse(f) for f in args.inject_fault]
    report = run_suite(
        args.pmax,
        args.qmax,
        args.nmax,
        budgets=budgets,
        threads=args.threads,
        faults=faults,
        progress=None if args.quiet else _err,
    )
    if report.params["pairs"] == 0:
        _err("note: no prime pairs p != q in range")
    if args.json:
        _out(report_to_json(report))
    else:
        _print_steps(report, only_failures=True)
    sm = report.summary
    if sm["failed"]:
        return EXIT_FAIL
    if sm["skipped"] and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.repetitions < 1:
        raise ValidationError(f"repetitions must be >= 1, got {args.repetitions}")
    rows = []
    if args.op in ("symbol", "all"):
        sizes = [make_odd_prime(s).value for s in args.sizes] if args.sizes else default_sizes(args.pmax)
        rows += bench_symbol(sizes, args.repetitions)
    if args.op in ("charsum", "all"):
        p = make_odd_prime(args.p).value
        if args.n < 1:
            raise ValidationError(f"order must be positive, got {args.n}")
        rows += bench_charsum(p, args.n, args.repetitions)
    _out(format_table(rows))
    return EXIT_OK


def _budget_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--enumeration-budget", type=int, default=DEFAULT_ENUMERATION_BUDGET,
                    help="maximum tuples enumerated per call (default %(default)s)")
    sp.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                    help="largest order computed in exact arithmetic (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qrlab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qrlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("symbol", help="evaluate the Legendre symbol (a/p)")
    sp.add_argument("a", type=int)
    sp.add_argument("p", type=int)
    sp.add_argument("--method", choices=["euler", "brute", "reciprocity", "all"], default="euler")
    sp.set_defaults(func=cmd_symbol)

    sp = sub.add_parser("charsum", help="character sum S_n(t), or the whole vector when t is omitted")
    sp.add_argument("p", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("t", type=int, nargs="?")
    sp.add_argument("--method", choices=["conv", "brute", "closed"], default="conv")
    sp.add_argument("--mod", type=int, help="work modulo this integer (>= 2)")
    _budget_flags(sp)
    sp.set_defaults(func=cmd_charsum)

    sp = sub.add_parser("orbit", help="cyclic-shift orbit decomposition of q-tuples over Z_p summing to t")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("t", type=int)
    sp.add_argument("--json", action="store_true")
    _budget_flags(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("verify", help="congruence and reciprocity checks for one prime pair")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("suite", help="run every check over ranges of primes")
    sp.add_argument("--pmax", type=int, default=50)
    sp.add_argument("--qmax", type=int, default=50)
    sp.add_argument("--nmax", type=int, default=9)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--threads", type=int, help="worker threads (default: $QRLAB_THREADS, else CPU count)")
    sp.add_argument("--strict", action="store_true", help="exit 3 if any step was skipped")
    sp.add_argument("--quiet", action="store_true", help="no progress on stderr")
    sp.add_argument("--inject-fault", action="append", default=[], metavar="P,N,T[,DELTA]",
                    help="testing aid: add DELTA (default 1) to exact S_N(T) mod P")
    _budget_flags(sp)
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("bench", help="median wall times of competing evaluators")
    sp.add_argument("--op", choices=["symbol", "charsum", "all"], default="all")
    sp.add_argument("--pmax", type=int, default=10007, help="largest prime size for --op symbol")
    sp.add_argument("--sizes", type=int, nargs="+", help="explicit primes for --op symbol")
    sp.add_argument("--p", type=int, default=101)
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--repetitions", type=int, default=5)
    sp.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        _err(f"error: {type(exc).__name__}: {exc}")
        return EXIT_BUDGET
    except (ValidationError, QRLabError, ValueError) as exc:
        _err(f"error: {type(exc).__name__}: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
