import pytest

from qrlab.errors import FactoringBudgetExceeded
from qrlab.legendre import (
    LegendreValue,
    legendre,
    legendre_brute,
    legendre_euler,
    legendre_reciprocity,
    minus_one_symbol,
    trial_factor,
    two_symbol,
)
from qrlab.modular import OddPrime, Residue, odd_primes

from conftest import squares_mod

EVALUATORS = [legendre_brute, legendre_euler, legendre_reciprocity]


def R(v, p):
    return Residue.of(v, OddPrime(p))


@pytest.mark.parametrize(
    "fn,a,p,expected",
    [
        (legendre_brute, 0, 7, 0),
        (legendre_brute, 1, 7, 1),
        (legendre_brute, 2, 5, -1),
        (legendre_euler, 1, 13, 1),
        (legendre_euler, 2, 5, -1),
        (legendre_euler, 12, 13, 1),
        (legendre_reciprocity, 1, 101, 1),
        (legendre_reciprocity, 5, 3, -1),
        (legendre_reciprocity, 2, 7, 1),
    ],
)
def test_examples(fn, a, p, expected):
    assert fn(R(a, p)) == expected


def test_values_are_legendre_values():
    for fn in EVALUATORS:
        v = fn(R(3, 7))
        assert isinstance(v, LegendreValue)
        assert v in (-1, 0, 1)


@pytest.mark.parametrize("p", odd_primes(200))
def test_agreement_with_squares(p):
    sq = squares_mod(p)
    for a in range(p):
        expected = 0 if a == 0 else (1 if a in sq else -1)
        assert [int(fn(R(a, p))) for fn in EVALUATORS] == [expected] * 3


def test_multiplicative():
    for p in odd_primes(200):
        chi = [int(legendre_euler(R(a, p))) for a in range(p)]
        for a in range(p):
            for b in range(p):
                assert chi[a * b % p] == chi[a] * chi[b]


def test_vanishing_total_and_balance():
    for p in odd_primes(1000):
        chi = [int(legendre_euler(R(a, p))) for a in range(p)]
        assert sum(chi) == 0
        assert chi.count(1) == chi.count(-1) == (p - 1) // 2


def test_supplements_against_euler():
    for p in odd_primes(1000):
        assert minus_one_symbol(p) == legendre_euler(R(-1, p))
        assert two_symbol(p) == legendre_euler(R(2, p))


def test_reciprocity_large_modulus():
    p = 2**61 - 1
    for a in (2, 3, 5, 7, 12345, 10**9 + 7, p - 1, p - 2):
        assert legendre_reciprocity(R(a, p)) == legendre_euler(R(a, p))


def test_factoring_budget():
    p = 2**61 - 1
    a = 10007 * 10009
    with pytest.raises(FactoringBudgetExceeded):
        legendre_reciprocity(R(a, p), factor_budget=100)
    assert legendre_reciprocity(R(a, p), factor_budget=10**6) == legendre_euler(R(a, p))


def test_trial_factor():
    assert trial_factor(1) == {}
    assert trial_factor(360) == {2: 3, 3: 2, 5: 1}
    assert trial_factor(97) == {97: 1}


def test_front_end():
    assert legendre(-1, 13) == 1
    assert legendre(2, 5, "brute") == -1
    with pytest.raises(ValueError):
        legendre(2, 5, "jacobi")
