"""Three independent evaluators of the Legendre symbol (a/p).

``legendre_brute`` searches for a square root, ``legendre_euler`` raises
``a`` to the power (p-1)/2, and ``legendre_reciprocity`` factors ``a`` and
flips each odd prime factor with the reciprocity law.  Any two of them
can serve as an oracle for the third.

The rule for (2/p) used by ``legendre_reciprocity`` (+1 iff p = +-1 mod 8)
is plumbing borrowed from elementary number theory; it is covered by the
exhaustive agreement tests rather than derived here.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from .errors import FactoringBudgetExceeded, InternalInconsistency
from .modular import OddPrime, Residue, as_prime, mod_pow

DEFAULT_FACTOR_BUDGET = 1_000_000


class LegendreValue(enum.IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    def __str__(self):
        return str(int(self))


@lru_cache(maxsize=256)
def _squares(p: int) -> frozenset[int]:
    return frozenset(x * x % p for x in range(1, p))


def legendre_brute(a: Residue) -> LegendreValue:
    if a.value == 0:
        return LegendreValue.ZERO
    if a.value in _squares(a.modulus.value):
        return LegendreValue.PLUS
    return LegendreValue.MINUS


def legendre_euler(a: Residue) -> LegendreValue:
    p = a.modulus.value
    r = mod_pow(a, a.modulus.half).value
    if r == 0:
        return LegendreValue.ZERO
    if r == 1:
        return LegendreValue.PLUS
    if r == p - 1:
        return LegendreValue.MINUS
    raise InternalInconsistency(f"a^((p-1)/2) = {r} mod {p}; is {p} really prime?")


def minus_one_symbol(p: OddPrime | int) -> int:
    """(-1/p) = (-1)^((p-1)/2)."""
    return -1 if as_prime(p).half % 2 else 1


def reciprocity_sign(p: OddPrime | int, q: OddPrime | int) -> int:
    """(-1)^(((p-1)/2)((q-1)/2)), the sign relating (p/q) and (q/p)."""
    return -1 if as_prime(p).half * as_prime(q).half % 2 else 1


def two_symbol(p: OddPrime | int) -> int:
    return 1 if as_prime(p).value % 8 in (1, 7) else -1


def trial_factor(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> dict[int, int]:
    """Factor ``n >= 1`` by trial division, spending at most ``budget`` divisions."""
    factors: dict[int, int] = {}
    spent = 0
    d = 2
    while d * d <= n:
        spent += 1
        if spent > budget:
            raise FactoringBudgetExceeded(f"factoring {n} needs more than {budget} trial divisions")
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def legendre_reciprocity(a: Residue, factor_budget: int = DEFAULT_FACTOR_BUDGET) -> LegendreValue:
    max_depth = a.modulus.value.bit_length()
    return LegendreValue(_reciprocity(a.value, a.modulus, factor_budget, max_depth))


def _reciprocity(a: int, p: OddPrime, budget: int, depth_left: int) -> int:
    # The modulus at least halves per level, so depth is bounded by log2 of the root modulus.
    if depth_left < 0:
        raise InternalInconsistency(f"reciprocity recursion too deep at modulus {p}")
    if a == 0:
        return 0
    sign = 1
    if a > p.half:
        a = p.value - a
        sign = minus_one_symbol(p)
    for r, e in trial_factor(a, budget).items():
        if e % 2 == 0:
            continue
        if r == 2:
            sign *= two_symbol(p)
        else:
            # every factor r of a < p/2 is a smaller odd prime than p
            rp = OddPrime(r)
            sign *= reciprocity_sign(p, rp) * _reciprocity(p.value % r, rp, budget, depth_left - 1)
    return sign


_EVALUATORS = {
    "euler": legendre_euler,
    "brute": legendre_brute,
    "reciprocity": legendre_reciprocity,
}


def legendre(a: int, p: OddPrime | int, method: str = "euler") -> LegendreValue:
    """Convenience front end taking plain integers."""
    try:
        fn = _EVALUATORS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; pick one of {sorted(_EVALUATORS)}") from None
    return fn(Residue.of(a, p))
