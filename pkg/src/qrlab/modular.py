"""Validated modular arithmetic: odd prime moduli, residues, powers, inverses."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from .errors import ModulusMismatch, NotOdd, NotPrime, ZeroInverse

MODULUS_LIMIT = 1 << 63
EXPONENT_LIMIT = 1 << 64

# Deterministic for every n < 3.3e24, which covers the whole 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_primes(hi: int, lo: int = 3) -> list[int]:
    """All odd primes in [lo, hi], ascending."""
    if hi < 3:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for d in range(3, int(hi**0.5) + 1, 2):
        if sieve[d]:
            sieve[d * d :: 2 * d] = False
    return [int(p) for p in np.flatnonzero(sieve) if p >= max(lo, 3)]


@total_ordering
@dataclass(frozen=True)
class OddPrime:
    value: int

    def __post_init__(self):
        v = self.value
        if isinstance(v, OddPrime):
            object.__setattr__(self, "value", v.value)
            return
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
            raise TypeError(f"modulus must be an integer, got {type(v).__name__}")
        v = int(v)
        object.__setattr__(self, "value", v)
        if v == 2:
            raise NotOdd("2 is prime but not odd")
        if v < 2 or v >= MODULUS_LIMIT or not is_prime(v):
            raise NotPrime(f"{v} is not an odd prime below 2^63")

    def __int__(self):
        return self.value

    __index__ = __int__

    def __eq__(self, other):
        if isinstance(other, OddPrime):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        return self.value < int(other)

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"OddPrime({self.value})"

    def __str__(self):
        return str(self.value)

    @property
    def half(self) -> int:
        """(p - 1) / 2"""
        return (self.value - 1) // 2


def make_odd_prime(n: int) -> OddPrime:
    """Validate ``n`` as an odd prime; raises NotPrime or NotOdd."""
    return OddPrime(n)


def as_prime(p: OddPrime | int) -> OddPrime:
    return p if isinstance(p, OddPrime) else OddPrime(p)


@dataclass(frozen=True)
class Residue:
    """An element of Z_p. Use :meth:`of` to reduce an arbitrary integer."""

    value: int
    modulus: OddPrime

    def __post_init__(self):
        if not isinstance(self.modulus, OddPrime):
            object.__setattr__(self, "modulus", OddPrime(self.modulus))
        object.__setattr__(self, "value", int(self.value))
        if not 0 <= self.value < self.modulus.value:
            raise ValueError(f"{self.value} is not in [0, {self.modulus.value})")

    @classmethod
    def of(cls, value: int, modulus: OddPrime | int) -> Residue:
        m = as_prime(modulus)
        return cls(int(value) % m.value, m)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"mod {self.modulus} vs mod {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine Residue with {type(other).__name__}")

    def __add__(self, other):
        return Residue.of(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue.of(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return Residue.of(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return Residue.of(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue.of(-self.value, self.modulus)

    def __truediv__(self, other):
        return self * mod_inv(Residue.of(self._coerce(other), self.modulus))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"Residue({self.value} mod {self.modulus.value})"


def mod_pow(base: Residue, exponent: int) -> Residue:
    if not 0 <= exponent < EXPONENT_LIMIT:
        raise ValueError(f"exponent {exponent} outside [0, 2^64)")
    p = base.modulus.value
    return Residue(pow(base.value, exponent, p), base.modulus)


def mod_inv(a: Residue) -> Residue:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.modulus.value}")
    return Residue(pow(a.value, -1, a.modulus.value), a.modulus)
