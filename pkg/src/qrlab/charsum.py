"""Character sums S_n(t) = sum over x_1+...+x_n = t of (x_1...x_n / p).

Several routes compute the same numbers:

* ``charsum_vector`` builds S_n for every t at once by repeated cyclic
  convolution with S_1, in exact integers or modulo some m;
* ``charsum_brute`` / ``charsum_brute_vector`` enumerate tuples;
* ``charsum_closed`` and ``charsum_s2`` evaluate the closed forms for odd n
  and for n = 2;
* ``orbit_decompose`` splits the tuple set into cyclic-shift orbits, and
  ``sq1_mod_q_orbit`` reads S_q(1) mod q off the single constant tuple.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import (
    EnumerationBudgetExceeded,
    EvenOrder,
    InternalInconsistency,
    ModeMismatch,
    ModulusMismatch,
    OrderBudgetExceeded,
    SamePrime,
    ValidationError,
)
from .legendre import LegendreValue, legendre_brute, legendre_euler, minus_one_symbol
from .modular import OddPrime, Residue, as_prime, mod_inv

DEFAULT_ENUMERATION_BUDGET = 10**7
DEFAULT_MAX_ORDER = 64

# numpy path for modular convolution: split operands into 16-bit halves so
# that p products of (m-1) * 2^16 fit in int64.
_NUMPY_MODULUS_LIMIT = 1 << 31
_NUMPY_LENGTH_LIMIT = 1 << 16


@dataclass(frozen=True)
class Exact:
    def __str__(self):
        return "exact"


@dataclass(frozen=True)
class Modular:
    m: int

    def __post_init__(self):
        if int(self.m) < 2:
            raise ValidationError(f"modulus {self.m} must be >= 2")
        object.__setattr__(self, "m", int(self.m))

    def __str__(self):
        return f"mod {self.m}"


Mode = Union[Exact, Modular]
EXACT = Exact()


def _mode_of(mode: Mode | int | None) -> Mode:
    if mode is None:
        return EXACT
    if isinstance(mode, (Exact, Modular)):
        return mode
    return Modular(mode)


@dataclass(frozen=True)
class CharSumVector:
    modulus: OddPrime
    order: int
    mode: Mode
    values: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.modulus.value:
            raise ValueError(f"expected {self.modulus.value} entries, got {len(self.values)}")
        if isinstance(self.mode, Modular):
            m = self.mode.m
            if any(not 0 <= v < m for v in self.values):
                raise ValueError(f"modular entries must lie in [0, {m})")

    def __getitem__(self, t: int | Residue) -> int:
        if isinstance(t, Residue):
            if t.modulus != self.modulus:
                raise ModulusMismatch(f"index mod {t.modulus} into vector mod {self.modulus}")
            t = t.value
        return self.values[t % self.modulus.value]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def reduce(self, m: int) -> CharSumVector:
        """Reduce an exact vector into Modular(m)."""
        if not isinstance(self.mode, Exact):
            raise ModeMismatch("only exact vectors can be reduced")
        return CharSumVector(self.modulus, self.order, Modular(m), tuple(v % m for v in self.values))

    def with_entry(self, t: int, value: int) -> CharSumVector:
        """Copy with one entry replaced (used for fault injection)."""
        vals = list(self.values)
        vals[t % self.modulus.value] = value
        return CharSumVector(self.modulus, self.order, self.mode, tuple(vals))


def s1_vector(p: OddPrime | int, mode: Mode | int | None = None) -> CharSumVector:
    p = as_prime(p)
    mode = _mode_of(mode)
    vals = [int(legendre_euler(Residue(t, p))) for t in range(p.value)]
    if isinstance(mode, Modular):
        vals = [v % mode.m for v in vals]
    return CharSumVector(p, 1, mode, tuple(vals))


def convolve(v: CharSumVector, w: CharSumVector) -> CharSumVector:
    """Cyclic convolution u(t) = sum_s v(s) w(t - s) over Z_p."""
    if v.modulus != w.modulus:
        raise ModulusMismatch(f"mod {v.modulus} vs mod {w.modulus}")
    if v.mode != w.mode:
        raise ModeMismatch(f"{v.mode} vs {w.mode}")
    p = v.modulus.value
    if isinstance(v.mode, Modular) and v.mode.m < _NUMPY_MODULUS_LIMIT and p < _NUMPY_LENGTH_LIMIT:
        vals = _convolve_mod_numpy(v.values, w.values, v.mode.m)
    else:
        # r[k] = w(-k), so w(t - s) is r rotated right by t, read at s
        r = [w.values[-k % p] for k in range(p)]
        vals = []
        for t in range(p):
            rot = r[p - t :] + r[: p - t]
            vals.append(sum(map(operator.mul, v.values, rot)))
        if isinstance(v.mode, Modular):
            vals = [x % v.mode.m for x in vals]
    return CharSumVector(v.modulus, v.order + w.order, v.mode, tuple(vals))


@np.errstate(over="raise")
def _convolve_mod_numpy(v, w, m: int) -> list[int]:
    p = len(v)
    va = np.asarray(v, dtype=np.int64)
    wa = np.asarray(w, dtype=np.int64)
    idx = (np.arange(p)[:, None] - np.arange(p)[None, :]) % p  # [t, s] -> t - s
    circ = wa[idx]
    lo = circ & 0xFFFF
    hi = circ >> 16
    acc_lo = (lo @ va) % m
    acc_hi = (hi @ va) % m
    out = (acc_hi * (1 << 16) + acc_lo) % m
    return [int(x) for x in out]


def charsum_vector(
    p: OddPrime | int,
    n: int,
    mode: Mode | int | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> CharSumVector:
    """S_n(.) by n - 1 successive convolutions with S_1."""
    p = as_prime(p)
    mode = _mode_of(mode)
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if isinstance(mode, Exact) and n > max_order:
        raise OrderBudgetExceeded(f"exact order {n} exceeds the configured cap {max_order}")
    s1 = s1_vector(p, mode)
    v = s1
    for _ in range(n - 1):
        v = convolve(v, s1)
    return v


def _enumerate_prefixes(p: int, k: int, budget: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sum mod p and character product of every k-tuple over Z_p, plus the character table."""
    if p**k > budget:
        raise EnumerationBudgetExceeded(f"{p}^{k} tuples exceeds the enumeration budget {budget}")
    mod = OddPrime(p)
    chi = np.array([int(legendre_brute(Residue(x, mod))) for x in range(p)], dtype=np.int8)
    xs = np.arange(p, dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    chars = np.ones(1, dtype=np.int8)
    for _ in range(k):
        sums = ((sums[:, None] + xs[None, :]) % p).ravel()
        chars = (chars[:, None] * chi[None, :]).ravel()
    return sums, chars, chi


def charsum_brute(
    p: OddPrime | int,
    n: int,
    t: Residue | int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> int:
    """Enumerate (x_1..x_{n-1}), set x_n = t - sum, and add up the characters."""
    p = as_prime(p)
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    t = t.value if isinstance(t, Residue) else int(t) % p.value
    sums, chars, chi = _enumerate_prefixes(p.value, n - 1, budget)
    last = (t - sums) % p.value
    return int(np.dot(chars.astype(np.int64), chi[last].astype(np.int64)))


def charsum_brute_vector(
    p: OddPrime | int,
    n: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> list[int]:
    """Brute-force S_n(t) for every t from a single enumeration of (n-1)-tuples.

    Tuples are tallied by their partial sum s (signed by character), then each
    tally is multiplied by (t - s / p); the result is the same tuple-by-tuple
    sum, regrouped.
    """
    p = as_prime(p)
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    q = p.value
    sums, chars, chi = _enumerate_prefixes(q, n - 1, budget)
    tally = np.bincount(sums[chars == 1], minlength=q) - np.bincount(sums[chars == -1], minlength=q)
    chi64 = chi.astype(np.int64)
    out = []
    for t in range(q):
        out.append(int(np.dot(tally, chi64[(t - np.arange(q)) % q])))
    return out


def charsum_closed(p: OddPrime | int, n: int, t: Residue | int) -> int:
    """Closed form for odd n: (t/p) * p^((n-1)/2) * (-1)^(((p-1)/2)((n-1)/2))."""
    p = as_prime(p)
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if n % 2 == 0:
        raise EvenOrder(f"no closed form for even order {n}")
    t = t if isinstance(t, Residue) else Residue.of(t, p)
    if t.value == 0:
        return 0
    k = (n - 1) // 2
    return int(legendre_euler(t)) * p.value**k * minus_one_symbol(p) ** k


def charsum_s2(p: OddPrime | int, t: Residue | int) -> int:
    p = as_prime(p)
    t = t.value if isinstance(t, Residue) else int(t) % p.value
    eps = int(legendre_euler(Residue(p.value - 1, p)))
    return eps * (p.value - 1) if t == 0 else -eps


@dataclass(frozen=True)
class OrbitStats:
    modulus: OddPrime
    tuple_len: OddPrime
    target: Residue
    n_fixed: int
    n_free: int
    fixed_contribution: int
    total: int
    orbit_sizes: dict[int, int]
    fixed_tuple_entry: int | None = None

    @property
    def tuple_count(self) -> int:
        return self.n_fixed + self.tuple_len.value * self.n_free


def orbit_decompose(
    p: OddPrime | int,
    q: OddPrime | int,
    t: Residue | int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> OrbitStats:
    """Split the q-tuples over Z_p with coordinate sum t into cyclic-shift orbits.

    Each tuple is encoded as a base-p integer; its orbit is identified by the
    smallest code among its rotations, and the orbit size is the smallest
    shift that returns the tuple to itself.
    """
    p, q = as_prime(p), as_prime(q)
    if p == q:
        raise SamePrime(f"p = q = {p}")
    t = t if isinstance(t, Residue) else Residue.of(t, p)
    if t.modulus != p:
        raise ModulusMismatch(f"target mod {t.modulus} for tuples over Z_{p}")
    P, Q = p.value, q.value
    if P ** (Q - 1) > budget:
        raise EnumerationBudgetExceeded(f"{P}^{Q - 1} tuples exceeds the enumeration budget {budget}")
    if P**Q >= 1 << 62:
        raise EnumerationBudgetExceeded(f"{P}^{Q} tuple codes do not fit in 64 bits")

    sums, chars, chi = _enumerate_prefixes(P, Q - 1, budget)
    last = (t.value - sums) % P
    chars = chars * chi[last]
    # prefix codes come out of the enumeration in lexicographic order
    codes = np.arange(P ** (Q - 1), dtype=np.int64) * P + last
    top = P ** (Q - 1)

    canon = codes.copy()
    period = np.full(codes.shape, Q, dtype=np.int64)
    rot = codes
    for k in range(1, Q):
        rot = (rot % top) * P + rot // top
        np.minimum(canon, rot, out=canon)
        back = (rot == codes) & (period == Q)
        period[back] = k
    reps = canon == codes
    rep_sizes = period[reps]
    sizes, counts = np.unique(rep_sizes, return_counts=True)
    orbit_sizes = {int(s): int(c) for s, c in zip(sizes, counts)}
    if not set(orbit_sizes) <= {1, Q}:
        raise InternalInconsistency(f"orbit sizes {sorted(orbit_sizes)} are not all in {{1, {Q}}}")

    fixed = period == 1
    n_fixed = int(fixed.sum())
    n_free = orbit_sizes.get(Q, 0)
    total = int(chars.astype(np.int64).sum())
    fixed_contribution = int(chars[fixed].astype(np.int64).sum())
    free_contribution = Q * int(chars[reps & ~fixed].astype(np.int64).sum())
    if fixed_contribution + free_contribution != total:
        raise InternalInconsistency("orbit contributions do not add up to the total")
    fixed_entry = int(last[fixed][0]) if n_fixed == 1 else None
    return OrbitStats(
        modulus=p,
        tuple_len=q,
        target=t,
        n_fixed=n_fixed,
        n_free=n_free,
        fixed_contribution=fixed_contribution,
        total=total,
        orbit_sizes=orbit_sizes,
        fixed_tuple_entry=fixed_entry,
    )


def sq1_mod_q_orbit(p: OddPrime | int, q: OddPrime | int) -> LegendreValue:
    """S_q(1) mod q as the constant tuple's character (q^-1 / p)^q = (q / p)."""
    p, q = as_prime(p), as_prime(q)
    if p == q:
        raise SamePrime(f"p = q = {p}")
    x = mod_inv(Residue.of(q.value, p))
    chi = legendre_euler(x)
    # q is odd, so chi^q = chi
    return LegendreValue(int(chi) ** q.value)
