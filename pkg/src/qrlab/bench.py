"""Wall-clock comparison of evaluator strategies. Makes no correctness claims."""

from __future__ import annotations

import random
import statistics
import time
from typing import Callable

from .charsum import Modular, charsum_brute_vector, charsum_vector
from .errors import BudgetExceeded, ValidationError
from .legendre import _squares, legendre_brute, legendre_euler, legendre_reciprocity
from .modular import OddPrime, Residue, is_prime

SYMBOL_SAMPLE = 64


def median_time(fn: Callable[[], object], repetitions: int) -> float:
    if repetitions < 1:
        raise ValidationError(f"repetitions must be >= 1, got {repetitions}")
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def prime_at_most(n: int) -> int:
    n = n if n % 2 else n - 1
    while n >= 3 and not is_prime(n):
        n -= 2
    if n < 3:
        raise ValidationError("no odd prime in range")
    return n


def default_sizes(pmax: int) -> list[int]:
    if pmax < 3:
        raise ValidationError(f"pmax must be >= 3, got {pmax}")
    sizes = {prime_at_most(max(3, pmax // 100)), prime_at_most(max(3, pmax // 10)), prime_at_most(pmax)}
    return sorted(sizes)


def bench_symbol(sizes: list[int], repetitions: int, seed: int = 0) -> list[dict]:
    rows = []
    rng = random.Random(seed)
    for p in sizes:
        mod = OddPrime(p)
        sample = [Residue(rng.randrange(p), mod) for _ in range(SYMBOL_SAMPLE)]
        for name, fn in (
            ("euler", legendre_euler),
            ("brute", legendre_brute),
            ("reciprocity", legendre_reciprocity),
        ):
            # brute caches squares per modulus; include the first build in each run
            def run(fn=fn):
                if fn is legendre_brute:
                    _squares.cache_clear()
                for a in sample:
                    fn(a)

            rows.append({"op": "symbol", "method": name, "p": p, "n": "", "calls": len(sample),
                         "median_s": median_time(run, repetitions)})
    return rows


def bench_charsum(p: int, n: int, repetitions: int) -> list[dict]:
    mod = OddPrime(p)
    rows = [
        {"op": "charsum", "method": "conv", "p": p, "n": n, "calls": 1,
         "median_s": median_time(lambda: charsum_vector(mod, n), repetitions)},
        {"op": "charsum", "method": f"conv-mod{n}", "p": p, "n": n, "calls": 1,
         "median_s": median_time(lambda: charsum_vector(mod, n, Modular(max(n, 2))), repetitions)},
    ]
    try:
        t = median_time(lambda: charsum_brute_vector(mod, n), repetitions)
    except BudgetExceeded:
        t = None
    rows.append({"op": "charsum", "method": "brute", "p": p, "n": n, "calls": 1, "median_s": t})
    return rows


def format_table(rows: list[dict]) -> str:
    cols = ["op", "method", "p", "n", "calls", "median_s"]
    lines = ["\t".join(cols)]
    for r in rows:
        t = r["median_s"]
        cells = [str(r[c]) for c in cols[:-1]] + ["over-budget" if t is None else f"{t:.6f}"]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"
