"""Numerical certification of each step in the reciprocity argument.

Every ``verify_*`` function instantiates one family of identities for a
concrete prime (or prime pair) and returns :class:`ProofStep` records.
``run_suite`` sweeps them over ranges of primes.  This certifies instances,
not the general statement.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .charsum import (
    DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_MAX_ORDER,
    EXACT,
    CharSumVector,
    Modular,
    charsum_brute_vector,
    charsum_closed,
    charsum_s2,
    charsum_vector,
    convolve,
    s1_vector,
    sq1_mod_q_orbit,
)
from .errors import BudgetExceeded, SamePrime, ValidationError
from .legendre import legendre_euler, minus_one_symbol, reciprocity_sign
from .modular import OddPrime, Residue, as_prime, odd_primes



class StepId(enum.Enum):
    S2Values = "S2Values"
    SnZero = "SnZero"
    Scaling = "Scaling"
    Recurrence = "Recurrence"
    ClosedForm = "ClosedForm"
    EulerCongruence = "EulerCongruence"
    OrbitCongruence = "OrbitCongruence"
    ReciprocityLaw = "ReciprocityLaw"

    @property
    def rank(self) -> int:
        return list(StepId).index(self)


@dataclass(frozen=True)
class ProofStep:
    step_id: StepId
    params: dict[str, Any]
    lhs: int | None
    rhs: int | None
    passed: bool
    modulus: int | None = None
    skipped: str | None = None

    @property
    def status(self) -> str:
        if self.skipped is not None:
            return "skipped"
        return "passed" if self.passed else "failed"


def _step(step_id, params, lhs, rhs, modulus=None) -> ProofStep:
    lhs, rhs = int(lhs), int(rhs)
    if modulus is not None:
        lhs, rhs = lhs % modulus, rhs % modulus
    return ProofStep(step_id, params, lhs, rhs, lhs == rhs, modulus)


def _skip(step_id, params, reason: str) -> ProofStep:
    return ProofStep(step_id, params, None, None, False, skipped=reason)


@dataclass(frozen=True)
class Budgets:
    enumeration: int = DEFAULT_ENUMERATION_BUDGET
    max_order: int = DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class Fault:
    """Overwrite S_order(t) mod p in the exact pipeline with S_order(t) + delta."""

    p: int
    order: int
    t: int
    delta: int = 1

    @classmethod
    def parse(cls, text: str) -> Fault:
        parts = [int(x) for x in text.replace(":", ",").split(",")]
        if len(parts) not in (3, 4):
            raise ValidationError(f"fault must be P,N,T[,DELTA], got {text!r}")
        return cls(*parts)


class Engine:
    """Memoized exact S_n vectors for one prime, built as S_n = S_{n-1} (*) S_1.

    A :class:`Fault` corrupts one stored entry; every vector built from the
    corrupted one inherits the damage, so dependent checks fail downstream.
    """

    def __init__(self, p: OddPrime | int, budgets: Budgets = Budgets(), faults: Iterable[Fault] = ()):
        self.p = as_prime(p)
        self.budgets = budgets
        self.faults = [f for f in faults if f.p == self.p.value]
        self._cache: dict[int, CharSumVector] = {}

    def _apply_faults(self, v: CharSumVector) -> CharSumVector:
        for f in self.faults:
            if f.order == v.order:
                v = v.with_entry(f.t, v[f.t] + f.delta)
        return v

    def vector(self, n: int) -> CharSumVector:
        if n in self._cache:
            return self._cache[n]
        if n > self.budgets.max_order:
            # same check, same error as the library entry point
            charsum_vector(self.p, n, EXACT, self.budgets.max_order)
        if n == 1:
            v = s1_vector(self.p)
        else:
            v = convolve(self.vector(n - 1), self.vector(1))
        v = self._apply_faults(v)
        self._cache[n] = v
        return v


def _engine(p, engine: Engine | None) -> Engine:
    p = as_prime(p)
    if engine is None:
        return Engine(p)
    if engine.p != p:
        raise ValueError(f"engine is for p = {engine.p}, not {p}")
    return engine


def verify_s2_identities(p: OddPrime | int, engine: Engine | None = None) -> list[ProofStep]:
    eng = _engine(p, engine)
    p = eng.p
    P = p.value
    s2 = eng.vector(2)
    params = {"p": P, "n": 2}
    steps = [
        _step(StepId.S2Values, {**params, "identity": "S2(0)=(-1/p)(p-1)"}, s2[0], charsum_s2(p, 0)),
        _step(StepId.S2Values, {**params, "identity": "S2(1)=-(-1/p)"}, s2[1], charsum_s2(p, 1)),
        _step(
            StepId.S2Values,
            {**params, "identity": "S2(a)=S2(1)"},
            sum(1 for a in range(1, P) if s2[a] == s2[1]),
            P - 1,
        ),
        _step(
            StepId.S2Values,
            {**params, "identity": "sum_t (t/p)=0"},
            sum(int(legendre_euler(Residue(t, p))) for t in range(P)),
            0,
        ),
    ]
    try:
        brute = charsum_brute_vector(p, 2, eng.budgets.enumeration)
        steps.append(
            _step(
                StepId.S2Values,
                {**params, "identity": "S2(t) matches enumeration"},
                sum(1 for t in range(P) if s2[t] == brute[t]),
                P,
            )
        )
    except BudgetExceeded as exc:
        steps.append(_skip(StepId.S2Values, {**params, "identity": "S2(t) matches enumeration"}, str(exc)))
    return steps


def verify_scaling_and_zero(p: OddPrime | int, n: int, engine: Engine | None = None) -> list[ProofStep]:
    """S_n(0) = 0 for odd n, and S_n(t) = (a/p)^n S_n(t/a) for every unit a and every t."""
    eng = _engine(p, engine)
    p = eng.p
    P = p.value
    params = {"p": P, "n": n}
    steps: list[ProofStep] = []
    try:
        v = eng.vector(n)
    except BudgetExceeded as exc:
        if n % 2:
            steps.append(_skip(StepId.SnZero, params, str(exc)))
        steps.append(_skip(StepId.Scaling, params, str(exc)))
        return steps
    if n % 2:
        steps.append(_step(StepId.SnZero, {**params, "identity": "Sn(0)=0"}, v[0], 0))
    ok = 0
    for a in range(1, P):
        chi = int(legendre_euler(Residue(a, p))) ** n
        ainv = pow(a, -1, P)
        ok += sum(1 for t in range(P) if v[t] == chi * v[t * ainv % P])
    steps.append(
        _step(StepId.Scaling, {**params, "identity": "Sn(t)=(a/p)^n Sn(t/a), all a,t"}, ok, (P - 1) * P)
    )
    return steps


def verify_recurrence_chain(p: OddPrime | int, n_max: int, engine: Engine | None = None) -> list[ProofStep]:
    """Walk odd n = 1, 3, ..., n_max checking S_{n+2}(1) = S_n(1) (-1/p) p and the closed form."""
    if n_max < 1 or n_max % 2 == 0:
        raise ValidationError(f"n_max must be a positive odd integer, got {n_max}")
    eng = _engine(p, engine)
    p = eng.p
    P = p.value
    factor = minus_one_symbol(p) * P
    steps: list[ProofStep] = []
    for n in range(1, n_max + 1, 2):
        params = {"p": P, "n": n}
        try:
            v = eng.vector(n)
        except BudgetExceeded as exc:
            steps.append(_skip(StepId.ClosedForm, params, str(exc)))
            if n + 2 <= n_max:
                steps.append(_skip(StepId.Recurrence, params, str(exc)))
            continue
        steps.append(_step(StepId.ClosedForm, {**params, "identity": "Sn(1) closed form"}, v[1], charsum_closed(p, n, 1)))
        if n + 2 <= n_max:
            nxt = convolve(v, eng.vector(2))
            steps.append(
                _step(
                    StepId.Recurrence,
                    {**params, "identity": "S(n+2)(1)=Sn(1)(-1/p)p"},
                    nxt[1],
                    v[1] * factor,
                )
            )
    return steps


def _check_pair(p, q) -> tuple[OddPrime, OddPrime]:
    p, q = as_prime(p), as_prime(q)
    if p == q:
        raise SamePrime(f"p = q = {p}")
    return p, q


def verify_congruences(p: OddPrime | int, q: OddPrime | int) -> list[ProofStep]:
    """S_q(1) mod q three ways, each compared with (p/q)(-1)^(...) and with (q/p)."""
    p, q = _check_pair(p, q)
    P, Q = p.value, q.value
    k = q.half
    routes = {
        "closed": pow(P, k, Q) * minus_one_symbol(p) ** k,
        "convolution": charsum_vector(p, Q, Modular(Q))[1],
        "orbit": int(sq1_mod_q_orbit(p, q)),
    }
    euler_side = int(legendre_euler(Residue.of(P, q))) * reciprocity_sign(p, q)
    orbit_side = int(legendre_euler(Residue.of(Q, p)))
    steps = []
    for route, value in routes.items():
        steps.append(
            _step(StepId.EulerCongruence, {"p": P, "q": Q, "route": route}, value, euler_side, modulus=Q)
        )
    for route, value in routes.items():
        steps.append(
            _step(StepId.OrbitCongruence, {"p": P, "q": Q, "route": route}, value, orbit_side, modulus=Q)
        )
    return steps


def verify_reciprocity(p: OddPrime | int, q: OddPrime | int) -> ProofStep:
    """(p/q)(q/p) = (-1)^(((p-1)/2)((q-1)/2)), using Euler's criterion only."""
    p, q = _check_pair(p, q)
    lhs = int(legendre_euler(Residue.of(p.value, q))) * int(legendre_euler(Residue.of(q.value, p)))
    return _step(StepId.ReciprocityLaw, {"p": p.value, "q": q.value}, lhs, reciprocity_sign(p, q))


@dataclass
class ProofReport:
    steps: list[ProofStep]
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def summary(self) -> dict[str, int]:
        counts = {"passed": 0, "failed": 0, "skipped": 0}
        for s in self.steps:
            counts[s.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["failed"] == 0

    def failures(self) -> list[ProofStep]:
        return [s for s in self.steps if s.status == "failed"]


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get("QRLAB_THREADS")
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ValidationError(f"QRLAB_THREADS must be an integer, got {env!r}") from None
    if threads is None:
        threads = len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
    if threads < 1:
        raise ValidationError(f"thread count must be >= 1, got {threads}")
    return threads


def _sort_key(step: ProofStep):
    return (step.params["p"], step.params.get("q", 0), step.step_id.rank)


def _prime_cell(p: int, n_max: int, budgets: Budgets, faults) -> list[ProofStep]:
    eng = Engine(p, budgets, faults)
    steps = verify_s2_identities(p, eng)
    for n in range(1, n_max + 1):
        steps += verify_scaling_and_zero(p, n, eng)
    steps += verify_recurrence_chain(p, n_max, eng)
    return steps


def _pair_cell(p: int, q: int) -> list[ProofStep]:
    return verify_congruences(p, q) + [verify_reciprocity(p, q)]


def run_suite(
    pmax: int,
    qmax: int,
    n_max: int = 9,
    budgets: Budgets = Budgets(),
    threads: int | None = None,
    faults: Iterable[Fault] = (),
    progress: Callable[[str], None] | None = None,
) -> ProofReport:
    """All per-prime checks for odd p <= pmax, and pair checks for p <= pmax, q <= qmax, p != q."""
    if pmax < 3 or qmax < 3:
        raise ValidationError("pmax and qmax must be at least 3")
    if n_max < 1 or n_max % 2 == 0:
        raise ValidationError(f"n_max must be a positive odd integer, got {n_max}")
    faults = list(faults)
    ps, qs = odd_primes(pmax), odd_primes(qmax)
    pairs = [(p, q) for p in ps for q in qs if p != q]
    tasks: list[tuple[Callable, tuple]] = [(_prime_cell, (p, n_max, budgets, faults)) for p in ps]
    tasks += [(_pair_cell, pq) for pq in pairs]

    def run(task):
        fn, args = task
        out = fn(*args)
        if progress:
            progress(f"{fn.__name__.strip('_')} {args[:2] if fn is _pair_cell else args[0]}")
        return out

    workers = resolve_threads(threads)
    if workers == 1:
        results = [run(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, tasks))
    steps = [s for cell in results for s in cell]
    steps.sort(key=_sort_key)  # stable: keeps per-family order within a cell
    params = {
        "pmax": pmax,
        "qmax": qmax,
        "nmax": n_max,
        "enumeration_budget": budgets.enumeration,
        "max_order": budgets.max_order,
        "primes": len(ps),
        "pairs": len(pairs),
    }
    if faults:
        params["faults"] = [f"{f.p},{f.order},{f.t},{f.delta}" for f in faults]
    return ProofReport(steps, params)


def verify_pair(p: OddPrime | int, q: OddPrime | int) -> ProofReport:
    p, q = _check_pair(p, q)
    return ProofReport(verify_congruences(p, q) + [verify_reciprocity(p, q)], {"p": p.value, "q": q.value})
