import numpy as np
import pytest


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def trial_division_table(limit: int) -> np.ndarray:
    """is_prime for 0..limit, by dividing every n by every d <= sqrt(limit)."""
    n = np.arange(limit + 1)
    table = n >= 2
    for d in range(2, int(limit**0.5) + 1):
        table &= (n % d != 0) | (n == d)
    return table


def squares_mod(p: int) -> set[int]:
    return {x * x % p for x in range(1, p)}


def brute_charsum(p: int, n: int, t: int) -> int:
    """Plain nested enumeration of all n-tuples; the slowest, most literal oracle."""
    from itertools import product

    sq = squares_mod(p)

    def chi(x):
        x %= p
        return 0 if x == 0 else (1 if x in sq else -1)

    total = 0
    for xs in product(range(p), repeat=n):
        if sum(xs) % p == t % p:
            prod = 1
            for x in xs:
                prod = prod * x % p
            total += chi(prod)
    return total


@pytest.fixture
def small_primes():
    return [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion; printed in the terminal summary."""
    record = {"detail": ""}
    yield record
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {record['name']}  {record['detail']}".rstrip())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
